"""
Alarms from hazard probabilities and their evaluation.

An alarm raised on day ``i`` claims that an extreme will occur in the window
``(i, i + dt]``. Days whose window runs past the end of the series are not
evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .extremes import EventSeries
from .hazard import hazard_closed_form
from .timeseries import _frozen


@dataclass(frozen=True)
class SignalSeries:
    dates: np.ndarray
    alarms: np.ndarray
    hazard_values: np.ndarray
    elapsed: np.ndarray
    w_t: float
    dt: int


@dataclass(frozen=True)
class ConfusionCounts:
    n11: int  # alarm, extreme followed
    n00: int  # quiet, nothing followed
    n01: int  # quiet, extreme followed (miss)
    n10: int  # alarm, nothing followed (false alarm)

    @property
    def total(self) -> int:
        return self.n11 + self.n00 + self.n01 + self.n10


@dataclass(frozen=True)
class Metrics:
    D: float
    A: float
    L: float
    U: float
    KSS: float
    theta: float


def elapsed_times(flags, seed_elapsed: int = 0) -> np.ndarray:
    """Trading days since the most recent extreme, 0 on extreme days.

    ``seed_elapsed`` is the elapsed count on the day before the series starts.
    """
    flags = np.asarray(flags, dtype=bool)
    n = flags.size
    pos = np.arange(n)
    last = np.maximum.accumulate(np.where(flags, pos, -1))
    return np.where(last >= 0, pos - last, seed_elapsed + 1 + pos).astype(np.int64)


def hazard_by_elapsed(dist, elapsed, dt):
    t, inv = np.unique(elapsed, return_inverse=True)
    return np.asarray(hazard_closed_form(dist, t, dt), dtype=float).reshape(-1)[inv]


def generate_signals(dist, events: EventSeries, w_t: float, dt: int = 1,
                     seed_elapsed: int = 0) -> SignalSeries:
    """Daily alarms ``W(dt | t_i) > w_t`` where ``t_i`` is the elapsed time on day ``i``."""
    if not 0 <= w_t <= 1:
        raise ValueError(f"hazard threshold {w_t} outside [0, 1]")
    if dt < 1:
        raise ValueError("dt must be >= 1")
    elapsed = elapsed_times(events.flags, seed_elapsed)
    h = hazard_by_elapsed(dist, elapsed, dt)
    return SignalSeries(_frozen(events.dates), _frozen(h > w_t), _frozen(h), _frozen(elapsed),
                        float(w_t), int(dt))


def event_days(flags, dt: int) -> np.ndarray:
    """``out[i]`` is True when an extreme occurs on a day in ``(i, i + dt]``;
    only the first ``len(flags) - dt`` days are returned."""
    f = np.asarray(flags, dtype=np.int64)
    n = f.size - dt
    if n <= 0:
        return np.zeros(0, dtype=bool)
    c = np.concatenate([[0], np.cumsum(f)])
    i = np.arange(n)
    return (c[i + dt + 1] - c[i + 1]) > 0


def _tally(alarms, events):
    return ConfusionCounts(
        n11=int(np.count_nonzero(alarms & events)),
        n00=int(np.count_nonzero(~alarms & ~events)),
        n01=int(np.count_nonzero(~alarms & events)),
        n10=int(np.count_nonzero(alarms & ~events)),
    )


def confusion(signals: SignalSeries, actual: EventSeries, dt: int | None = None) -> ConfusionCounts:
    dt = signals.dt if dt is None else dt
    if signals.dates.shape != actual.dates.shape or not np.array_equal(signals.dates, actual.dates):
        raise ValueError("signal and event series cover different dates")
    ev = event_days(actual.flags, dt)
    return _tally(np.asarray(signals.alarms)[: ev.size], ev)


def metrics(counts: ConfusionCounts, theta: float = 0.5) -> Metrics:
    if counts.n01 + counts.n11 == 0:
        raise ZeroDivisionError("hit rate D undefined: no extreme windows evaluated")
    if counts.n00 + counts.n10 == 0:
        raise ZeroDivisionError("false-alarm rate A undefined: no quiet windows evaluated")
    D = counts.n11 / (counts.n01 + counts.n11)
    A = counts.n10 / (counts.n00 + counts.n10)
    L = theta * (1 - D) + (1 - theta) * A
    return Metrics(D=D, A=A, L=L, U=min(theta, 1 - theta) - L, KSS=D - A, theta=theta)


def _sweep(dist, events, dt, seed_elapsed):
    """Hazard thresholds and the alarm counts on event/quiet days at each."""
    elapsed = elapsed_times(events.flags, seed_elapsed)
    ev = event_days(events.flags, dt)
    h = hazard_by_elapsed(dist, elapsed, dt)[: ev.size]
    n_ev, n_q = int(ev.sum()), int((~ev).sum())
    if n_ev == 0 or n_q == 0:
        raise ValueError("need at least one extreme window and one quiet window")
    cand = np.unique(np.concatenate([h, [0.0, 1.0]]))
    he, hq = np.sort(h[ev]), np.sort(h[~ev])
    n11 = n_ev - np.searchsorted(he, cand, side="right")
    n10 = n_q - np.searchsorted(hq, cand, side="right")
    return cand, n11, n10, n_ev, n_q


@dataclass(frozen=True)
class RocCurve:
    w: np.ndarray
    A: np.ndarray
    D: np.ndarray

    @property
    def points(self) -> set:
        return set(zip(self.A.tolist(), self.D.tolist()))


def roc(dist, events: EventSeries, dt: int = 1, seed_elapsed: int = 0) -> RocCurve:
    """(A, D) for every distinct alarm set reachable by moving the threshold.

    Thresholds are the hazard values that actually occur plus 0 and 1; since
    elapsed time is an integer this enumerates every attainable alarm set.
    Points are ordered by increasing A.
    """
    cand, n11, n10, n_ev, n_q = _sweep(dist, events, dt, seed_elapsed)
    A, D = n10 / n_q, n11 / n_ev
    # descending threshold = growing alarm sets; keep the largest w per set
    order = np.argsort(-cand, kind="stable")
    w, A, D = cand[order], A[order], D[order]
    key = np.stack([n10[order], n11[order]], axis=1)
    keep = np.ones(w.size, dtype=bool)
    keep[1:] = np.any(key[1:] != key[:-1], axis=1)
    w, A, D = w[keep], A[keep], D[keep]
    if not (A[0] == 0 and D[0] == 0):
        w, A, D = np.r_[1.0, w], np.r_[0.0, A], np.r_[0.0, D]
    if not (A[-1] == 1 and D[-1] == 1):
        w, A, D = np.r_[w, 0.0], np.r_[A, 1.0], np.r_[D, 1.0]
    return RocCurve(_frozen(w), _frozen(A), _frozen(D))


@dataclass(frozen=True)
class ThresholdChoice:
    w_t: float
    metrics: Metrics
    counts: ConfusionCounts
    useful: bool


def optimize_threshold(dist, events: EventSeries, theta: float = 0.5, dt: int = 1,
                       seed_elapsed: int = 0) -> ThresholdChoice:
    """Hazard threshold maximising usefulness ``U(theta)``; ties go to the
    larger threshold. ``useful`` is False when no threshold gives ``U > 0``."""
    cand, n11, n10, n_ev, n_q = _sweep(dist, events, dt, seed_elapsed)
    D, A = n11 / n_ev, n10 / n_q
    U = min(theta, 1 - theta) - (theta * (1 - D) + (1 - theta) * A)
    j = int(np.flatnonzero(U == U.max())[-1])
    counts = ConfusionCounts(n11=int(n11[j]), n00=int(n_q - n10[j]), n01=int(n_ev - n11[j]),
                             n10=int(n10[j]))
    m = metrics(counts, theta)
    return ThresholdChoice(float(cand[j]), m, counts, useful=bool(m.U > 0))
