import numpy as np
import pytest
from scipy import stats
from statsmodels.stats.diagnostic import acorr_ljungbox
from statsmodels.tsa.stattools import acf as sm_acf

from extreme_hazard.extremes import EventSeries
from extreme_hazard.intervals import (RecurrenceIntervals, acf, autocorrelation, describe,
                                      extract_intervals, ljung_box, stars)


def events(n, positions):
    flags = np.zeros(n, dtype=bool)
    flags[list(positions)] = True
    return EventSeries(np.datetime64("2000-01-01") + np.arange(n), flags)


def test_gaps():
    assert extract_intervals(events(12, (3, 5, 10))).values.tolist() == [2, 5]
    assert extract_intervals(events(12, (7, 8))).values.tolist() == [1]


def test_too_few_extremes():
    with pytest.raises(ValueError):
        extract_intervals(events(12, (4,)))


def test_positive_only():
    with pytest.raises(ValueError):
        RecurrenceIntervals(np.array([1, 0, 2]))


def test_constant_intervals():
    s = describe([2, 2, 2, 2])
    assert (s.mean, s.stdev, s.median) == (2, 0, 2)
    assert s.n == 4


def test_moment_conventions():
    x = np.array([1.0, 2, 2, 3, 7, 11, 4, 1, 1, 30])
    s = describe(x, lags=(1,), h=5)
    assert s.stdev == pytest.approx(np.std(x, ddof=1))
    assert s.skew == pytest.approx(stats.skew(x))
    assert s.kurt == pytest.approx(stats.kurtosis(x, fisher=False))
    assert s.median == 2.5


def test_exponential_moments():
    x = np.random.default_rng(0).exponential(size=10_000)
    s = describe(x)
    # sampling sd of the skewness/kurtosis of 10^4 exponentials is ~0.1 / ~1.5
    assert abs(s.skew - 2) < 0.4
    assert abs(s.kurt - 9) < 4


def test_acf_matches_statsmodels():
    x = np.random.default_rng(1).exponential(size=500)
    assert np.allclose(acf(x, 30), sm_acf(x, nlags=30, fft=False), atol=1e-12)


def test_ar1_lag_one():
    rng = np.random.default_rng(2)
    e = rng.normal(size=20_000)
    x = np.empty_like(e)
    x[0] = e[0]
    for i in range(1, x.size):
        x[i] = 0.5 * x[i - 1] + e[i]
    rho, level = autocorrelation(x + 10, 1)
    assert abs(rho - 0.5) < 0.05 and level == 0.01


def test_shuffled_intervals_uncorrelated():
    inside = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        x = rng.permutation(np.ceil(rng.exponential(20, size=600)))
        inside += abs(autocorrelation(x, 1)[0]) < 2 / np.sqrt(x.size)
    assert inside >= 45


def test_significance_levels():
    n = 400
    x = np.random.default_rng(3).random(n)
    rho, level = autocorrelation(x, 1)
    z = abs(rho) * np.sqrt(n)
    expected = 0.01 if z > 2.5758 else 0.05 if z > 1.96 else 0.10 if z > 1.6449 else None
    assert level == expected
    assert stars(0.01) == "***" and stars(None) == ""


def test_ljung_box_matches_statsmodels():
    x = np.random.default_rng(4).exponential(size=300)
    q, h, p = ljung_box(x, 30)
    ref = acorr_ljungbox(x, lags=[30])
    assert h == 30
    assert q == pytest.approx(float(ref["lb_stat"].iloc[0]), rel=1e-10)
    assert p == pytest.approx(float(ref["lb_pvalue"].iloc[0]), rel=1e-8)


def test_ljung_box_zero_correlation():
    # a constant series has every sample autocorrelation set to 0
    q, h, p = ljung_box(np.full(50, 3.0), 30)
    assert q == 0.0 and p == 1.0


def test_ljung_box_null_uniform():
    ps = [ljung_box(np.random.default_rng(s).exponential(size=400), 30)[2] for s in range(200)]
    assert stats.kstest(ps, "uniform").pvalue > 0.05


def test_short_samples_give_nan():
    s = describe([1, 2, 3, 4, 5, 6])
    assert np.isnan(s.lbq[0])
    assert np.isnan(s.acf[5][0])
    with pytest.raises(ValueError):
        describe([1, 2, 3])
