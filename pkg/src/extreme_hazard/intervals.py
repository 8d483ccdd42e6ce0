"""Recurrence intervals between extremes and their descriptive statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .extremes import EventSeries, ExtremeThreshold
from .timeseries import _frozen

# two-sided normal critical values for 10%, 5% and 1% significance
_Z = ((0.01, 2.5758293035489004), (0.05, 1.959963984540054), (0.10, 1.6448536269514722))


@dataclass(frozen=True)
class RecurrenceIntervals:
    values: np.ndarray
    source_threshold: ExtremeThreshold | None = None

    def __post_init__(self):
        v = _frozen(self.values, np.int64 if _integral(self.values) else float)
        if v.ndim != 1 or np.any(v <= 0):
            raise ValueError("intervals must be a 1-d array of positive values")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size


def _integral(values):
    a = np.asarray(values)
    return a.dtype.kind in "iu" or (a.size > 0 and np.all(np.mod(a, 1) == 0))


@dataclass(frozen=True)
class IntervalStats:
    n: int
    mean: float
    median: float
    stdev: float
    skew: float
    kurt: float
    acf: dict  # lag -> (rho, significance level or None)
    lbq: tuple  # (statistic, dof, p-value)


def extract_intervals(events: EventSeries) -> RecurrenceIntervals:
    """Trading-day gaps between consecutive extremes.

    The open gaps before the first and after the last extreme are dropped.
    """
    idx = np.flatnonzero(np.asarray(events.flags))
    if idx.size < 2:
        raise ValueError(f"need at least 2 extremes to form an interval, got {idx.size}")
    return RecurrenceIntervals(np.diff(idx), events.threshold)


def _values(intervals):
    if isinstance(intervals, RecurrenceIntervals):
        return np.asarray(intervals.values, dtype=float)
    return np.asarray(intervals, dtype=float)


def acf(x, nlags):
    """Sample autocorrelations for lags ``0..nlags`` (biased, statsmodels-style)."""
    x = np.asarray(x, dtype=float)
    d = x - x.mean()
    denom = d @ d
    if denom == 0:
        return np.concatenate([[1.0], np.zeros(nlags)])
    return np.array([1.0] + [d[:-k] @ d[k:] / denom for k in range(1, nlags + 1)])


def autocorrelation(intervals, lag: int = 1):
    """Lag-``lag`` autocorrelation and the smallest significance level
    (0.01, 0.05, 0.10) at which it falls outside the ``+-z/sqrt(n)`` band,
    or ``None`` if insignificant at 10%."""
    x = _values(intervals)
    n = x.size
    if lag < 1 or n <= lag + 1:
        raise ValueError(f"lag {lag} too large for {n} intervals")
    rho = float(acf(x, lag)[lag])
    level = next((a for a, z in _Z if abs(rho) > z / np.sqrt(n)), None)
    return rho, level


def ljung_box(intervals, h: int = 30):
    """Ljung-Box portmanteau statistic over lags ``1..h``.

    Returns ``(Q, dof, p)`` with ``p`` from a chi-square with ``h`` degrees
    of freedom.
    """
    x = _values(intervals)
    n = x.size
    if n <= h:
        raise ValueError(f"need more than {h} intervals, got {n}")
    rho = acf(x, h)[1:]
    k = np.arange(1, h + 1)
    q = float(n * (n + 2) * np.sum(rho**2 / (n - k)))
    return q, h, float(stats.chi2.sf(q, h))


def stars(level):
    return {0.01: "***", 0.05: "**", 0.10: "*"}.get(level, "")


def describe(intervals, lags=(1, 5), h: int = 30) -> IntervalStats:
    """Moments, lag autocorrelations and Ljung-Box Q of the intervals.

    Conventions: stdev uses the ``n-1`` divisor, skewness is ``m3/m2**1.5``
    and kurtosis is raw ``m4/m2**2`` (3 for a Gaussian). ACF entries and the
    Ljung-Box triple are NaN when the sample is too short for them.
    """
    x = _values(intervals)
    n = x.size
    if n < 4:
        raise ValueError(f"need at least 4 intervals, got {n}")
    d = x - x.mean()
    m2 = np.mean(d**2)
    if m2 > 0:
        skew = float(np.mean(d**3) / m2**1.5)
        kurt = float(np.mean(d**4) / m2**2)
    else:
        skew, kurt = 0.0, float("nan")
    table = {}
    for lag in lags:
        try:
            table[lag] = autocorrelation(x, lag)
        except ValueError:
            table[lag] = (float("nan"), None)
    try:
        lbq = ljung_box(x, h)
    except ValueError:
        lbq = (float("nan"), h, float("nan"))
    return IntervalStats(
        n=n,
        mean=float(x.mean()),
        median=float(np.median(x)),
        stdev=float(x.std(ddof=1)),
        skew=skew,
        kurt=kurt,
        acf=table,
        lbq=lbq,
    )
