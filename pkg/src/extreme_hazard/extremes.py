"""
Extreme thresholds and event marking.

Two ways to pick the threshold ``x_t``: a Hill/Kolmogorov-Smirnov scan over
upper order statistics (the threshold whose power-law tail fit is closest to
the empirical tail) or a plain empirical quantile. An observation is extreme
when its transformed return is strictly above ``x_t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .timeseries import ReturnKind, ReturnSeries, _frozen

MIN_TAIL = 100


class DegenerateTailError(ValueError):
    """Raised when the tail carries no scale information (Hill gamma = 0)."""


@dataclass(frozen=True)
class ThresholdScan:
    """Per-candidate Hill and KS results, candidates in ascending order.

    ``n`` is the size of the scanned sample and ``kind`` the return kind it
    came from.
    """

    candidates: np.ndarray
    gamma_inv: np.ndarray
    ks_stat: np.ndarray
    tail_counts: np.ndarray
    n: int
    kind: ReturnKind | None = None

    def __len__(self):
        return self.candidates.size


@dataclass(frozen=True)
class ExtremeThreshold:
    x_t: float
    method: str  # "evt_ks" or "quantile"
    quantile_equiv: float
    tau_q: float
    q: float | None = None
    kind: ReturnKind | None = None

    def __post_init__(self):
        if not math.isfinite(self.x_t):
            raise ValueError("threshold must be finite")
        if not 0 < self.quantile_equiv < 1:
            raise ValueError("quantile_equiv must lie in (0, 1)")

    @property
    def label(self) -> str:
        if self.method == "evt_ks":
            return "evt"
        return "q" + f"{self.q:.4g}"[2:]


@dataclass(frozen=True)
class EventSeries:
    dates: np.ndarray
    flags: np.ndarray
    threshold: ExtremeThreshold | None = field(default=None, compare=False)

    def __len__(self):
        return self.flags.size

    @property
    def count(self) -> int:
        return int(self.flags.sum())

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.flags)


def hill_gamma(sorted_sample, k: int) -> float:
    """Hill estimate of the tail index reciprocal from the top ``k`` values.

    ``gamma = mean(ln x_(n+1-i), i=1..k) - ln x_(n-k)`` with the sample in
    ascending order; ``x_(n-k)`` is the threshold.
    """
    x = np.sort(np.asarray(sorted_sample, dtype=float))
    n = x.size
    if not 1 <= k < n:
        raise ValueError(f"k={k} out of range for sample of size {n}")
    u = x[n - k - 1]
    tail = x[n - k:]
    if u <= 0:
        raise ValueError(f"non-positive threshold value {u} in tail")
    gamma = float(np.mean(np.log(tail)) - math.log(u))
    if gamma <= 0:
        raise DegenerateTailError("flat tail: all tail values equal the threshold")
    return gamma


def ks_tail_distance(sorted_sample, k: int, gamma: float) -> float:
    """Sup distance between the empirical CDF of the top ``k`` values and a
    Pareto CDF ``1 - (x/u)**(-1/gamma)`` anchored at ``u = x_(n-k)``."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    x = np.sort(np.asarray(sorted_sample, dtype=float))
    n = x.size
    if not 1 <= k < n:
        raise ValueError(f"k={k} out of range for sample of size {n}")
    u = x[n - k - 1]
    if u <= 0:
        raise ValueError(f"non-positive threshold value {u}")
    return _ks(np.log(x[n - k:]) - math.log(u), gamma)


def _ks(log_excess, gamma):
    k = log_excess.size
    fit = -np.expm1(-log_excess / gamma)
    i = np.arange(1, k + 1)
    return float(max(np.max(i / k - fit), np.max(fit - (i - 1) / k)))


def scan_evt_threshold(returns, min_tail: int = MIN_TAIL) -> ThresholdScan:
    """Hill and KS statistics for every admissible threshold candidate.

    Candidates are ``x_(n-k)`` for ``min_tail <= k <= n // 2``. A candidate is
    kept only when it is positive, when the tail ``x > x_(n-k)`` has exactly
    ``k`` members (ties at the cutoff would make the extreme set ambiguous),
    and when its Hill gamma is positive.
    """
    x, kind = _transformed(returns)
    n = x.size
    if n < 2 * min_tail:
        raise ValueError(f"series of length {n} too short for a tail scan (need {2 * min_tail})")
    xs = np.sort(x)
    kmax = n // 2
    ks = np.arange(min_tail, kmax + 1)
    u = xs[n - ks - 1]
    ok = (u > 0) & (xs[n - ks] > u)
    ks = ks[ok]
    with np.errstate(divide="ignore", invalid="ignore"):
        logx = np.log(np.where(xs > 0, xs, np.nan))
    # sum of the top k logs
    top = np.concatenate([[0.0], np.cumsum(logx[::-1])])
    out_x, out_g, out_d, out_k = [], [], [], []
    for k in ks:
        lu = logx[n - k - 1]
        gamma = top[k] / k - lu
        if not gamma > 0:
            continue
        out_x.append(xs[n - k - 1])
        out_g.append(1.0 / gamma)
        out_d.append(_ks(logx[n - k:] - lu, gamma))
        out_k.append(k)
    order = np.argsort(out_x, kind="stable")
    return ThresholdScan(
        candidates=_frozen(np.asarray(out_x, float)[order]),
        gamma_inv=_frozen(np.asarray(out_g, float)[order]),
        ks_stat=_frozen(np.asarray(out_d, float)[order]),
        tail_counts=_frozen(np.asarray(out_k, int)[order]),
        n=n,
        kind=kind,
    )


def select_threshold(scan: ThresholdScan) -> ExtremeThreshold:
    """Candidate with the smallest KS distance; ties go to the larger ``x``."""
    if len(scan) == 0:
        raise ValueError("empty threshold scan")
    d = scan.ks_stat
    best = np.flatnonzero(d == d.min())[-1]
    k = int(scan.tail_counts[best])
    qeq = (scan.n - k) / scan.n
    return ExtremeThreshold(
        x_t=float(scan.candidates[best]),
        method="evt_ks",
        quantile_equiv=qeq,
        tau_q=scan.n / k,
        kind=scan.kind,
    )


def quantile_threshold(returns, q: float) -> ExtremeThreshold:
    """Nearest-rank empirical ``q``-quantile: the ``ceil(n q)``-th order statistic."""
    if not 0 < q < 1:
        raise ValueError(f"quantile {q} outside (0, 1)")
    x, kind = _transformed(returns)
    n = x.size
    xs = np.sort(x)
    rank = max(1, math.ceil(n * q - 1e-9))
    x_t = float(xs[rank - 1])
    if not np.any(xs > x_t):
        raise DegenerateTailError(f"no observations above the {q} quantile {x_t}")
    return ExtremeThreshold(x_t=x_t, method="quantile", quantile_equiv=q,
                            tau_q=1.0 / (1.0 - q), q=q, kind=kind)


def mark_extremes(returns: ReturnSeries, threshold: ExtremeThreshold) -> EventSeries:
    if threshold.kind is not None and ReturnKind(returns.kind) != threshold.kind:
        raise ValueError(f"threshold from {threshold.kind.value} returns applied to "
                         f"{ReturnKind(returns.kind).value} returns")
    flags = np.asarray(returns.transformed) > threshold.x_t
    return EventSeries(_frozen(returns.dates), _frozen(flags), threshold)


def _transformed(returns):
    if isinstance(returns, ReturnSeries):
        return np.asarray(returns.transformed, dtype=float), ReturnKind(returns.kind)
    return np.asarray(returns, dtype=float), None
