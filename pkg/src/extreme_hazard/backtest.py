"""
Calibration / prediction backtests.

For every (return kind, threshold method) cell of a split: mark extremes in
the calibration period, fit the three interval distributions, choose the
hazard threshold that maximises usefulness in-sample, then apply the frozen
threshold, distribution and hazard threshold to the prediction period.
Nothing computed from the prediction period feeds back into a fitted
quantity.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .distfit import FitComparison, Family, compare_fits
from .extremes import (EventSeries, ExtremeThreshold, mark_extremes, quantile_threshold,
                       scan_evt_threshold, select_threshold)
from .forecast import (ConfusionCounts, Metrics, confusion, elapsed_times, generate_signals,
                       metrics, optimize_threshold)
from .intervals import IntervalStats, describe, extract_intervals
from .timeseries import PriceSeries, ReturnKind, compute_returns

logger = logging.getLogger(__name__)

THRESHOLDS = ("evt", "q95", "q975", "q99")
QUANTILES = {"q95": 0.95, "q975": 0.975, "q99": 0.99}
KINDS = tuple(k.value for k in ReturnKind)

REFERENCE_SPLITS = (
    ("A", ("1885-01-01", "1928-12-31"), ("1929-01-01", "1932-12-31")),
    ("B", ("1885-01-01", "1972-12-31"), ("1973-01-01", "1975-12-31")),
    ("C", ("1885-01-01", "1986-12-31"), ("1987-01-01", "1989-12-31")),
    ("D", ("1885-01-01", "1999-12-31"), ("2000-01-01", "2003-12-31")),
    ("E", ("1885-01-01", "2006-12-31"), ("2007-01-01", "2009-12-31")),
    ("F", ("1885-01-01", "2010-12-31"), ("2011-01-01", "2015-12-31")),
)


class CoverageError(ValueError):
    pass


@dataclass(frozen=True)
class SplitSpec:
    calibration: tuple
    prediction: tuple
    kinds: tuple = KINDS
    thresholds: tuple = THRESHOLDS
    dt: int = 1
    theta: float = 0.5
    grid: str = "fast"
    family: str = "q_exp"
    label: str = ""

    def __post_init__(self):
        c0, c1 = (np.datetime64(d, "D") for d in self.calibration)
        p0, p1 = (np.datetime64(d, "D") for d in self.prediction)
        if c1 < c0 or p1 < p0:
            raise ValueError("empty date range in split")
        if (c0, c1) != (p0, p1) and p0 <= c1:
            raise ValueError("prediction must start after calibration ends")
        for t in self.thresholds:
            if t not in THRESHOLDS:
                raise ValueError(f"unknown threshold {t!r}; expected one of {THRESHOLDS}")
        for k in self.kinds:
            ReturnKind(k)


@dataclass
class CellReport:
    kind: str
    threshold_label: str
    threshold: ExtremeThreshold | None = None
    n_extremes: int = 0
    stats: IntervalStats | None = None
    fits: FitComparison | None = None
    family: str = "q_exp"
    w_t: float = float("nan")
    useful: bool = False
    counts_in: ConfusionCounts | None = None
    metrics_in: Metrics | None = None
    counts_out: ConfusionCounts | None = None
    metrics_out: Metrics | None = None
    error: str | None = None


@dataclass
class BacktestReport:
    spec: SplitSpec
    cells: list = field(default_factory=list)

    def cell(self, kind, threshold) -> CellReport:
        for c in self.cells:
            if c.kind == kind and c.threshold_label == threshold:
                return c
        raise KeyError((kind, threshold))


def _span(dates, start, end):
    lo = int(np.searchsorted(dates, np.datetime64(start, "D"), side="left"))
    hi = int(np.searchsorted(dates, np.datetime64(end, "D"), side="right"))
    return lo, hi


def calibrate_threshold(cal_returns, label) -> ExtremeThreshold:
    if label == "evt":
        return select_threshold(scan_evt_threshold(cal_returns))
    return quantile_threshold(cal_returns, QUANTILES[label])


def _run_cell(returns, cal, pred, label, spec, threshold=None) -> CellReport:
    kind = returns.kind.value
    cell = CellReport(kind, label, family=spec.family)
    c0, c1 = cal
    p0, p1 = pred
    x = np.asarray(returns.transformed)
    cal_returns = returns.between(returns.dates[c0], returns.dates[c1 - 1])
    thr = threshold or calibrate_threshold(cal_returns, label)
    cell.threshold = thr
    cal_events = mark_extremes(cal_returns, thr)
    cell.n_extremes = cal_events.count
    iv = extract_intervals(cal_events)
    if iv.n < 10:
        raise ValueError(f"calibration yields only {iv.n} intervals (need 10)")
    cell.stats = describe(iv)
    cell.fits = compare_fits(iv, thr.tau_q, spec.grid)
    dist = cell.fits[spec.family]

    # in-sample evaluation starts at the first calibration extreme
    first = c0 + int(cal_events.indices[0])
    flags = x > thr.x_t
    ev_in = EventSeries(returns.dates[first:c1], flags[first:c1], thr)
    choice = optimize_threshold(dist, ev_in, spec.theta, spec.dt)
    cell.w_t, cell.useful = choice.w_t, choice.useful
    cell.counts_in, cell.metrics_in = choice.counts, choice.metrics

    start = max(p0, first)
    seed = int(elapsed_times(flags[first:start])[-1]) if start > first else 0
    ev_out = EventSeries(returns.dates[start:p1], flags[start:p1], thr)
    sig = generate_signals(dist, ev_out, choice.w_t, spec.dt, seed_elapsed=seed)
    cell.counts_out = confusion(sig, ev_out, spec.dt)
    try:
        cell.metrics_out = metrics(cell.counts_out, spec.theta)
    except ZeroDivisionError as exc:
        logger.warning("%s/%s out-of-sample: %s", kind, label, exc)
    return cell


def run_split(prices: PriceSeries, spec: SplitSpec, thresholds: dict | None = None
              ) -> BacktestReport:
    """Run every (kind, threshold) cell of one calibration/prediction split.

    ``thresholds`` optionally maps ``(kind, label)`` to a precomputed
    :class:`ExtremeThreshold` (useful to reuse calibration artifacts).
    Cells that fail numerically are kept with ``error`` set.
    """
    report = BacktestReport(spec)
    if tuple(spec.calibration) == tuple(spec.prediction):
        warnings.warn("prediction period equals calibration period", stacklevel=2)
    for kind in spec.kinds:
        returns = compute_returns(prices, kind)
        cal = _span(returns.dates, *spec.calibration)
        pred = _span(returns.dates, *spec.prediction)
        if cal[1] - cal[0] < 2 or pred[1] <= pred[0]:
            raise CoverageError(f"{spec.label or 'split'}: no data in calibration or prediction range")
        for label in spec.thresholds:
            given = (thresholds or {}).get((kind, label))
            try:
                cell = _run_cell(returns, cal, pred, label, spec, given)
            except (ValueError, ArithmeticError) as exc:
                logger.warning("%s %s/%s failed: %s", spec.label, kind, label, exc)
                cell = CellReport(kind, label, family=spec.family, error=str(exc))
            report.cells.append(cell)
    report.cells.sort(key=lambda c: (KINDS.index(c.kind), THRESHOLDS.index(c.threshold_label)))
    return report


def check_coverage(prices: PriceSeries, splits=REFERENCE_SPLITS):
    missing = []
    dates = prices.dates
    for label, cal, pred in splits:
        for name, (a, b) in (("calibration", cal), ("prediction", pred)):
            a, b = np.datetime64(a, "D"), np.datetime64(b, "D")
            inside = dates[(dates >= a) & (dates <= b)]
            if inside.size == 0 or inside[0] > a + 365 or inside[-1] < b - 365:
                missing.append(f"{label} {name} {a}..{b}")
    if missing:
        raise CoverageError("insufficient date coverage: " + "; ".join(missing))


def run_reference_suite(prices: PriceSeries, kinds=KINDS, thresholds=THRESHOLDS, dt=1, theta=0.5,
                    grid="fast", family="q_exp", splits=REFERENCE_SPLITS) -> list:
    """The six fixed calibration/prediction splits, each a :class:`BacktestReport`."""
    check_coverage(prices, splits)
    return [
        run_split(prices, SplitSpec(cal, pred, tuple(kinds), tuple(thresholds), dt, theta, grid,
                                    Family(family).value, label))
        for label, cal, pred in splits
    ]
