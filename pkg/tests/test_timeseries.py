import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extreme_hazard.timeseries import (PriceDataError, PriceSeries, ReturnKind, compute_returns,
                                       load_prices, parse_date)


def test_two_row_file(write_prices):
    p = load_prices(write_prices([("2000-01-03", 100), ("2000-01-04", 110)]))
    assert len(p) == 2
    assert p.levels.tolist() == [100.0, 110.0]


def test_header_and_compact_dates(write_prices):
    p = load_prices(write_prices([("20000104", 2), ("20000103", 1)], header="date,close"))
    assert p.dates.tolist() == [np.datetime64("2000-01-03"), np.datetime64("2000-01-04")]
    assert p.levels.tolist() == [1.0, 2.0]


def test_zero_level_names_row(write_prices):
    rows = [(f"2000-01-{d:02d}", 100 + d) for d in range(3, 10)]
    rows[4] = (rows[4][0], 0)
    with pytest.raises(PriceDataError, match="row 5") as exc:
        load_prices(write_prices(rows))
    assert exc.value.rows == (5,)


def test_duplicate_dates_name_both_rows(write_prices):
    rows = [("2000-01-03", 1), ("2000-01-04", 2), ("2000-01-03", 3)]
    with pytest.raises(PriceDataError) as exc:
        load_prices(write_prices(rows))
    assert exc.value.rows == (1, 3)


def test_garbage_row(write_prices):
    with pytest.raises(PriceDataError, match="row 2"):
        load_prices(write_prices([("2000-01-03", 1), ("yesterday", 2)]))


def test_parse_date_forms():
    assert parse_date("1885-02-16") == np.datetime64("1885-02-16")
    assert parse_date("18850216") == np.datetime64("1885-02-16")
    assert parse_date("1885-02-16T00:00:00") == np.datetime64("1885-02-16")


def test_unsorted_series_rejected():
    with pytest.raises(PriceDataError):
        PriceSeries(np.array(["2000-01-04", "2000-01-03"], dtype="datetime64[D]"), [1.0, 2.0])


def test_identity_and_unit_return():
    d = np.array(["2000-01-03", "2000-01-04", "2000-01-05"], dtype="datetime64[D]")
    r = compute_returns(PriceSeries(d, [100.0, 100.0, 100.0 * math.e]), "positive")
    assert r.values[0] == 0.0
    assert r.values[1] == pytest.approx(1.0, abs=1e-15)
    assert r.dates.tolist() == d[1:].tolist()


def test_kinds():
    d = np.arange(np.datetime64("2000-01-01"), np.datetime64("2000-01-05"))
    p = PriceSeries(d, [1.0, 2.0, 1.0, 1.5])
    base = compute_returns(p, "positive").values
    assert np.array_equal(compute_returns(p, "negative").transformed, -base)
    assert np.array_equal(compute_returns(p, ReturnKind.ABSOLUTE).transformed, np.abs(base))
    with pytest.raises(ValueError):
        compute_returns(p, "sideways")


def test_between_is_inclusive():
    d = np.arange(np.datetime64("2000-01-01"), np.datetime64("2000-01-11"))
    p = PriceSeries(d, np.arange(1.0, 11.0))
    sub = p.between("2000-01-03", "2000-01-05")
    assert len(sub) == 3 and sub.levels[0] == 3.0


def test_arrays_are_read_only():
    d = np.arange(np.datetime64("2000-01-01"), np.datetime64("2000-01-04"))
    p = PriceSeries(d, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        p.levels[0] = 5.0


levels = st.lists(st.floats(0.01, 1e6, allow_nan=False), min_size=2, max_size=60)


@given(levels)
@settings(max_examples=60, deadline=None)
def test_returns_telescope(lv):
    d = np.datetime64("1990-01-01") + np.arange(len(lv))
    r = compute_returns(PriceSeries(d, lv), "positive")
    assert r.values.sum() == pytest.approx(math.log(lv[-1] / lv[0]), abs=1e-9)


@given(levels)
@settings(max_examples=60, deadline=None)
def test_kind_symmetry(lv):
    d = np.datetime64("1990-01-01") + np.arange(len(lv))
    p = PriceSeries(d, lv)
    neg = compute_returns(p, "negative").transformed
    pos = compute_returns(p, "positive").transformed
    ab = compute_returns(p, "absolute").transformed
    assert np.array_equal(neg, -pos)
    assert np.array_equal(ab, np.maximum(neg, pos))
