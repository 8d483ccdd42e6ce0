"""Random generators for demos and tests: interval samples and price paths."""

from __future__ import annotations

import numpy as np

from .distfit import Family, FittedDistribution
from .timeseries import PriceSeries


def sample_intervals(dist: FittedDistribution, size, rng=None) -> np.ndarray:
    """Draw continuous intervals from ``dist`` by inverting its survival function."""
    rng = np.random.default_rng(rng)
    s, p = dist.shape, dist.params
    if dist.family is Family.WEIBULL:
        return p["beta"] * (-np.log1p(-rng.random(size))) ** (1 / s)
    if dist.family is Family.Q_EXP:
        u = 1 - rng.random(size)  # in (0, 1]
        return np.expm1(np.log(u) * (s - 1) / (s - 2)) / ((s - 1) * p["lam"])
    # (b t)^mu is Gamma(1/mu, 1) distributed
    return rng.gamma(1 / s, size=size) ** (1 / s) / p["b"]


def garch_prices(n=20000, seed=0, start="1900-01-01", omega=2e-6, alpha=0.09, beta=0.9,
                 nu=4.0) -> PriceSeries:
    """GARCH(1,1) price path with unit-variance Student-t shocks on business days.

    Volatility clustering makes the recurrence intervals between extremes
    visibly non-Poissonian, which is what the demos need.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_t(nu, size=n) * np.sqrt((nu - 2) / nu)
    r = np.empty(n)
    var = omega / (1 - alpha - beta)
    for i in range(n):
        r[i] = np.sqrt(var) * z[i]
        var = omega + alpha * r[i] ** 2 + beta * var
    levels = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(r)]))
    dates = np.busday_offset(np.datetime64(start, "D"), np.arange(n + 1), roll="forward")
    return PriceSeries(dates, levels)
