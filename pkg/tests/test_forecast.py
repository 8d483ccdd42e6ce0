import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extreme_hazard import forecast
from extreme_hazard.distfit import FAMILIES, make_distribution
from extreme_hazard.extremes import EventSeries
from extreme_hazard.forecast import (ConfusionCounts, SignalSeries, confusion, elapsed_times,
                                     event_days, generate_signals, metrics, optimize_threshold,
                                     roc)
from extreme_hazard.hazard import hazard_closed_form
from oracles import brute_confusion

QEXP = make_distribution("q_exp", 1.35, 20)


def series(flags, start="2001-01-01"):
    flags = np.asarray(flags, dtype=bool)
    return EventSeries(np.datetime64(start) + np.arange(flags.size), flags)


def signals_for(events, alarms, dt=1):
    n = len(events)
    return SignalSeries(events.dates, np.asarray(alarms, bool), np.zeros(n), np.zeros(n, int),
                        0.5, dt)


def bernoulli(n, p, seed):
    return series(np.random.default_rng(seed).random(n) < p)


@pytest.fixture
def increasing_hazard(monkeypatch):
    # none of the three families has a rising hazard, so stub the lookup
    monkeypatch.setattr(forecast, "hazard_by_elapsed",
                        lambda dist, elapsed, dt: 1 - 1 / (2 + np.asarray(elapsed, float)))


# -- elapsed time and signals ---------------------------------------------

def test_elapsed_times():
    f = [0, 1, 0, 0, 1, 1, 0]
    assert elapsed_times(f).tolist() == [1, 0, 1, 2, 0, 0, 1]
    assert elapsed_times(f, seed_elapsed=9).tolist() == [10, 0, 1, 2, 0, 0, 1]


def test_signal_extremes():
    ev = bernoulli(300, 0.05, 0)
    assert generate_signals(QEXP, ev, 0.0).alarms.all()
    assert not generate_signals(QEXP, ev, 1.0).alarms.any()
    with pytest.raises(ValueError):
        generate_signals(QEXP, ev, 1.5)


def test_signal_hand_trace():
    ev = series([1, 0, 0, 1, 0, 0, 0])
    w1, w2 = hazard_closed_form(QEXP, 1), hazard_closed_form(QEXP, 2)
    sig = generate_signals(QEXP, ev, (w1 + w2) / 2)
    assert sig.alarms.tolist()[:5] == [True, True, False, True, True]
    assert sig.elapsed.tolist() == [0, 1, 2, 0, 1, 2, 3]


# -- confusion counts -------------------------------------------------------

def test_event_days():
    assert event_days([0, 0, 1, 0, 0, 1], 1).tolist() == [False, True, False, False, True]
    assert event_days([0, 0, 1, 0, 0, 1], 2).tolist() == [True, True, False, True]
    assert event_days([1], 1).size == 0


def test_all_on_all_events():
    ev = series(np.ones(30))
    c = confusion(signals_for(ev, np.ones(30)), ev)
    assert (c.n11, c.n00, c.n01, c.n10) == (29, 0, 0, 0)


def test_confusion_brute_force():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        dt = int(rng.integers(1, 6))
        ev = series(rng.random(200) < rng.uniform(0.02, 0.3))
        alarms = rng.random(200) < 0.5
        c = confusion(signals_for(ev, alarms, dt), ev)
        ref = brute_confusion(alarms, ev.flags, dt)
        assert (c.n11, c.n00, c.n01, c.n10) == (ref["n11"], ref["n00"], ref["n01"], ref["n10"])
        assert c.total == 200 - dt


def test_confusion_date_mismatch():
    ev = series(np.zeros(10))
    other = series(np.zeros(10), start="2002-01-01")
    with pytest.raises(ValueError):
        confusion(signals_for(other, np.zeros(10)), ev)


# -- metrics ----------------------------------------------------------------

def test_hand_metrics():
    c = ConfusionCounts(n11=3, n00=4, n01=1, n10=2)
    assert c.total == 10
    m = metrics(c, 0.5)
    assert m.D == 0.75 and m.A == pytest.approx(1 / 3)
    assert m.L == pytest.approx(0.2916666666666667, abs=1e-15)
    assert m.U == pytest.approx(0.2083333333333333, abs=1e-15)
    assert m.KSS == pytest.approx(0.4166666666666667, abs=1e-15)


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.8])
def test_perfect_forecaster(theta):
    m = metrics(ConfusionCounts(n11=7, n00=30, n01=0, n10=0), theta)
    assert (m.D, m.A, m.KSS) == (1.0, 0.0, 1.0)
    assert m.U == pytest.approx(min(theta, 1 - theta))


def test_undefined_rates():
    with pytest.raises(ZeroDivisionError, match="D"):
        metrics(ConfusionCounts(0, 5, 0, 1))
    with pytest.raises(ZeroDivisionError, match="A"):
        metrics(ConfusionCounts(3, 0, 1, 0))


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
@settings(max_examples=300, deadline=None)
def test_usefulness_is_half_kss(n11, n00, n01, n10):
    if n11 + n01 == 0 or n00 + n10 == 0:
        return
    m = metrics(ConfusionCounts(n11, n00, n01, n10), 0.5)
    assert abs(m.U - m.KSS / 2) <= 1e-12


# -- ROC and threshold choice -----------------------------------------------

def test_roc_family_invariance():
    ev = bernoulli(3000, 0.04, 1)
    curves = [roc(make_distribution(f, {"q_exp": 1.3}.get(f.value, 0.5), 25), ev) for f in FAMILIES]
    assert curves[0].points == curves[1].points == curves[2].points
    assert (0.0, 0.0) in curves[0].points and (1.0, 1.0) in curves[0].points


def test_roc_random_events_near_diagonal():
    ev = bernoulli(40_000, 0.05, 2)
    c = roc(QEXP, ev)
    assert np.all(np.diff(c.A) >= 0) and np.all(np.diff(c.D) >= 0)
    assert np.max(np.abs(c.D - c.A)) < 0.08


def test_roc_matches_threshold_sweep():
    ev = bernoulli(500, 0.1, 3)
    c = roc(QEXP, ev, dt=2)
    for w, a, d in zip(c.w, c.A, c.D):
        cnt = confusion(generate_signals(QEXP, ev, w, 2), ev)
        assert cnt.n10 / (cnt.n10 + cnt.n00) == a and cnt.n11 / (cnt.n11 + cnt.n01) == d


def test_roc_perfect_separation(increasing_hazard):
    ev = series(np.arange(400) % 5 == 0)
    assert (0.0, 1.0) in roc(QEXP, ev).points


def test_optimum_perfect_process(increasing_hazard):
    # extremes every 5 days: only elapsed time 4 precedes an extreme
    ev = series(np.arange(400) % 5 == 0)
    for theta in (0.3, 0.5, 0.7):
        ch = optimize_threshold(QEXP, ev, theta)
        assert ch.metrics.U == pytest.approx(min(theta, 1 - theta))
        assert ch.metrics.KSS == 1.0 and ch.useful


def test_optimum_equals_brute_force():
    ev = bernoulli(800, 0.06, 4)
    ch = optimize_threshold(QEXP, ev, 0.5, dt=1)
    h = np.unique(generate_signals(QEXP, ev, 0.0).hazard_values)
    best = max(metrics(confusion(generate_signals(QEXP, ev, w), ev)).U for w in np.r_[0.0, h, 1.0])
    assert ch.metrics.U == best


def test_ties_go_to_larger_threshold(monkeypatch):
    # constant hazard: "all alarms" and "no alarms" both give U = 0
    monkeypatch.setattr(forecast, "hazard_by_elapsed",
                        lambda dist, elapsed, dt: np.full(np.shape(elapsed), 0.3))
    ch = optimize_threshold(QEXP, bernoulli(200, 0.1, 6), 0.5)
    assert ch.metrics.U == 0 and ch.w_t == 1.0 and not ch.useful


def test_hit_rate_grows_with_theta():
    from extreme_hazard.synthetic import garch_prices
    from extreme_hazard.extremes import mark_extremes, quantile_threshold
    from extreme_hazard.timeseries import compute_returns

    r = compute_returns(garch_prices(8000, seed=5), "absolute")
    ev = mark_extremes(r, quantile_threshold(r, 0.95))
    d = [optimize_threshold(QEXP, ev, th).metrics.D for th in (0.3, 0.5, 0.7)]
    assert d[0] <= d[1] <= d[2]
