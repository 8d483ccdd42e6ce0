"""Extreme-return recurrence intervals, hazard probabilities and alarm backtests."""

from .backtest import (REFERENCE_SPLITS, BacktestReport, CellReport, CoverageError, SplitSpec,
                       run_reference_suite, run_split)
from .distfit import (BoundarySolutionWarning, Family, FitComparison, FittedDistribution,
                      compare_fits, derive_scale, fit_mle, log_likelihood, logpdf,
                      make_distribution, pdf)
from .extremes import (DegenerateTailError, EventSeries, ExtremeThreshold, ThresholdScan,
                       hill_gamma, ks_tail_distance, mark_extremes, quantile_threshold,
                       scan_evt_threshold, select_threshold)
from .forecast import (ConfusionCounts, Metrics, RocCurve, SignalSeries, confusion,
                       generate_signals, metrics, optimize_threshold, roc)
from .hazard import (HazardQuery, HazardUnderflowError, empirical_hazard, hazard_closed_form,
                     hazard_quadrature, survival)
from .intervals import (IntervalStats, RecurrenceIntervals, autocorrelation, describe,
                        extract_intervals, ljung_box)
from .timeseries import (PriceDataError, PriceSeries, ReturnKind, ReturnSeries,
                         compute_returns, load_prices)

__version__ = "0.1.0"

__all__ = [
    "REFERENCE_SPLITS", "BacktestReport", "CellReport", "CoverageError", "SplitSpec",
    "run_reference_suite", "run_split", "BoundarySolutionWarning", "Family", "FitComparison",
    "FittedDistribution", "compare_fits", "derive_scale", "fit_mle", "log_likelihood",
    "logpdf", "make_distribution", "pdf", "DegenerateTailError", "EventSeries",
    "ExtremeThreshold", "ThresholdScan", "hill_gamma", "ks_tail_distance", "mark_extremes",
    "quantile_threshold", "scan_evt_threshold", "select_threshold", "ConfusionCounts",
    "Metrics", "RocCurve", "SignalSeries", "confusion", "generate_signals", "metrics",
    "optimize_threshold", "roc", "HazardQuery", "HazardUnderflowError", "empirical_hazard",
    "hazard_closed_form", "hazard_quadrature", "survival", "IntervalStats",
    "RecurrenceIntervals", "autocorrelation", "describe", "extract_intervals", "ljung_box",
    "PriceDataError", "PriceSeries", "ReturnKind", "ReturnSeries", "compute_returns",
    "load_prices",
]
