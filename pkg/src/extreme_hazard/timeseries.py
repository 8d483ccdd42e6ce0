"""
Price ingestion and log-return transforms.

Elapsed time everywhere in this package is measured in trading days, i.e.
row positions of the price file; weekends and holidays are not counted.
"""

from __future__ import annotations

import csv
import datetime as _dt
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)


class PriceDataError(ValueError):
    """Malformed or invalid price input.

    ``rows`` holds the offending 1-based line numbers of the source file.
    """

    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)


class ReturnKind(str, Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    ABSOLUTE = "absolute"


def _frozen(a, dtype=None):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PriceSeries:
    """Dated index levels, strictly increasing in date, all levels positive."""

    dates: np.ndarray
    levels: np.ndarray

    def __post_init__(self):
        dates = _frozen(self.dates, "datetime64[D]")
        levels = _frozen(self.levels, float)
        if dates.shape != levels.shape or dates.ndim != 1:
            raise PriceDataError("dates and levels must be 1-d arrays of equal length")
        if dates.size > 1 and not np.all(np.diff(dates) > np.timedelta64(0, "D")):
            raise PriceDataError("dates must be strictly increasing")
        if np.any(~np.isfinite(levels)) or np.any(levels <= 0):
            bad = np.flatnonzero(~(levels > 0) | ~np.isfinite(levels))
            raise PriceDataError(f"non-positive level at index {int(bad[0])}", rows=bad + 1)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "levels", levels)

    def __len__(self):
        return self.levels.size

    def between(self, start=None, end=None) -> "PriceSeries":
        """Sub-series with ``start <= date <= end`` (either bound optional)."""
        mask = _date_mask(self.dates, start, end)
        return PriceSeries(self.dates[mask], self.levels[mask])


@dataclass(frozen=True)
class ReturnSeries:
    """Daily log returns ``values`` and their kind-specific transform.

    ``dates[i]`` is the date of the later price in the pair, so the return
    of day ``i`` is known at the close of ``dates[i]``.
    """

    dates: np.ndarray
    values: np.ndarray
    kind: ReturnKind
    transformed: np.ndarray

    def __len__(self):
        return self.values.size

    def between(self, start=None, end=None) -> "ReturnSeries":
        mask = _date_mask(self.dates, start, end)
        return ReturnSeries(
            _frozen(self.dates[mask]),
            _frozen(self.values[mask]),
            self.kind,
            _frozen(self.transformed[mask]),
        )


def _date_mask(dates, start, end):
    mask = np.ones(dates.size, dtype=bool)
    if start is not None:
        mask &= dates >= np.datetime64(start, "D")
    if end is not None:
        mask &= dates <= np.datetime64(end, "D")
    return mask


def parse_date(text: str) -> np.datetime64:
    """Parse ISO-8601 (``YYYY-MM-DD``, optional time part) or ``YYYYMMDD``."""
    s = text.strip()
    if len(s) == 8 and s.isdigit():
        d = _dt.date(int(s[:4]), int(s[4:6]), int(s[6:]))
    else:
        d = _dt.date.fromisoformat(s[:10])
    return np.datetime64(d, "D")


def load_prices(source) -> PriceSeries:
    """Read a two-column ``date,level`` CSV file.

    A header line is optional. Rows are sorted by date on load. Errors name
    the 1-based line number of the offending row(s).

    Raises
    ------
    PriceDataError
        On unparseable rows, non-positive levels, or duplicate dates.
    """
    path = Path(source)
    dates, levels, lines = [], [], []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 2:
                raise PriceDataError(f"row {lineno}: expected two columns (date, level)", [lineno])
            try:
                d = parse_date(row[0])
                level = float(row[1])
            except ValueError:
                if not dates and lineno == 1:
                    continue  # header
                raise PriceDataError(f"row {lineno}: cannot parse {row[:2]!r}", [lineno]) from None
            if not np.isfinite(level) or level <= 0:
                raise PriceDataError(f"row {lineno}: non-positive level {level}", [lineno])
            dates.append(d)
            levels.append(level)
            lines.append(lineno)

    if not dates:
        raise PriceDataError(f"{path}: no data rows")
    dates = np.array(dates, dtype="datetime64[D]")
    lines = np.array(lines)
    order = np.argsort(dates, kind="stable")
    dates, lines = dates[order], lines[order]
    levels = np.asarray(levels, dtype=float)[order]
    dup = np.flatnonzero(dates[1:] == dates[:-1])
    if dup.size:
        a, b = sorted((int(lines[dup[0]]), int(lines[dup[0] + 1])))
        raise PriceDataError(f"rows {a} and {b}: duplicate date {dates[dup[0]]}", [a, b])
    return PriceSeries(dates, levels)


def transform(values, kind) -> np.ndarray:
    kind = ReturnKind(kind)
    if kind is ReturnKind.NEGATIVE:
        return -values
    if kind is ReturnKind.POSITIVE:
        return values.copy()
    return np.abs(values)


def compute_returns(prices: PriceSeries, kind="negative") -> ReturnSeries:
    """Log returns ``ln I(t) - ln I(t-1)`` tagged with ``kind``.

    Negative-kind returns are sign-flipped so that large losses are large
    positive numbers.
    """
    if len(prices) < 2:
        raise ValueError("need at least two prices to form a return")
    kind = ReturnKind(kind)
    r = np.diff(np.log(prices.levels))
    return ReturnSeries(
        _frozen(prices.dates[1:]), _frozen(r), kind, _frozen(transform(r, kind))
    )
