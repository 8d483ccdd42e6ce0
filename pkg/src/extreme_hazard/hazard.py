"""
Hazard probability W(dt | t): the chance that the next extreme arrives
within ``dt`` trading days given that ``t`` days have passed since the last
one,

    W(dt | t) = [S(t) - S(t + dt)] / S(t),

with ``S`` the survival function of the interval distribution. Three routes:
closed form from the survival functions, direct quadrature of the density
(the reference), and counting on an observed interval sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._gammainc import log_gammaincc
from .distfit import Family, FittedDistribution, pdf
from .intervals import RecurrenceIntervals


class HazardUnderflowError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HazardQuery:
    t: int
    dt: int = 1

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"elapsed time t={self.t} must be >= 0")
        if self.dt < 1:
            raise ValueError(f"horizon dt={self.dt} must be >= 1")


def log_survival(dist: FittedDistribution, t):
    """``ln P(tau > t)`` in closed form."""
    t = np.asarray(t, dtype=float)
    s, p = dist.shape, dist.params
    if dist.family is Family.STRETCHED_EXP:
        # P(tau > t) = Q(1/mu, (b t)^mu)
        return log_gammaincc(1 / s, (p["b"] * t) ** s)
    if dist.family is Family.Q_EXP:
        return (s - 2) / (s - 1) * np.log1p((s - 1) * p["lam"] * t)
    return -((t / p["beta"]) ** s)


def survival(dist, t):
    return np.exp(log_survival(dist, t))


def _unpack(t, dt):
    if isinstance(t, HazardQuery):
        return t.t, t.dt
    return t, dt


def hazard_closed_form(dist: FittedDistribution, t, dt=1):
    """Hazard probability from the survival function; vectorised over ``t`` and ``dt``.

    ``t`` may also be a :class:`HazardQuery`.
    """
    t, dt = _unpack(t, dt)
    t = np.asarray(t, dtype=float)
    dt = np.asarray(dt, dtype=float)
    if np.any(t < 0) or np.any(dt < 0):
        raise ValueError("t and dt must be non-negative")
    if dist.family is Family.Q_EXP:
        q, lam = dist.shape, dist.params["lam"]
        z = (q - 1) * lam
        w = -np.expm1((1 - 1 / (q - 1)) * np.log1p(z * dt / (1 + z * t)))
    elif dist.family is Family.WEIBULL:
        a, beta = dist.shape, dist.params["beta"]
        w = -np.expm1((t / beta) ** a - ((t + dt) / beta) ** a)
    else:
        with np.errstate(over="raise", invalid="raise"):
            try:
                diff = log_survival(dist, t + dt) - log_survival(dist, t)
            except FloatingPointError as exc:
                raise ArithmeticError(
                    f"incomplete gamma overflow for mu={dist.shape}, b={dist.params['b']}, "
                    f"t={t}, dt={dt}") from exc
        w = -np.expm1(diff)
    w = np.clip(w, 0.0, 1.0)
    return float(w) if w.ndim == 0 else w


def _integral(dist, lo, hi):
    kw = dict(epsabs=0.0, epsrel=1e-12, limit=500)
    if dist.family is Family.WEIBULL and lo == 0 and dist.shape != 1:
        # integrable t^(alpha-1) singularity at the origin
        a, beta = dist.shape, dist.params["beta"]
        f = lambda x: a / beta**a * math.exp(-((x / beta) ** a))  # noqa: E731
        return integrate.quad(f, 0, hi, weight="alg", wvar=(a - 1, 0), **kw)[0]
    f = lambda x: float(pdf(dist, x))  # noqa: E731
    if math.isinf(hi):
        # one finite piece, then x = a/u maps [a, inf) onto (0, 1]
        a = lo + max(dist.tau_q, 1.0)
        head = integrate.quad(f, lo, a, **kw)[0]
        g = lambda u: f(a / u) * a / (u * u) if u > 0 else 0.0  # noqa: E731
        return head + integrate.quad(g, 0.0, 1.0, **kw)[0]
    return integrate.quad(f, lo, hi, **kw)[0]


def hazard_quadrature(dist: FittedDistribution, t, dt=1) -> float:
    """Hazard probability by adaptive quadrature of the density.

    Independent of the closed forms; used as the reference they are checked
    against.
    """
    t, dt = _unpack(t, dt)
    t, dt = float(t), float(dt)
    if t < 0 or dt < 0:
        raise ValueError("t and dt must be non-negative")
    if dt == 0:
        return 0.0
    num = _integral(dist, t, t + dt)
    den = num + _integral(dist, t + dt, math.inf)
    if den < 1e-300:
        raise HazardUnderflowError(f"survival integral underflows at t={t}")
    return min(max(num / den, 0.0), 1.0)


def empirical_hazard(intervals, t, dt=1) -> float:
    """Share of intervals longer than ``t`` that end within ``(t, t + dt]``.

    NaN when no interval exceeds ``t``.
    """
    t, dt = _unpack(t, dt)
    x = np.asarray(intervals.values if isinstance(intervals, RecurrenceIntervals) else intervals)
    alive = np.count_nonzero(x > t)
    if alive == 0:
        return float("nan")
    return np.count_nonzero((x > t) & (x <= t + dt)) / alive


def hazard_curve(intervals, fits, ts, dt=1):
    """Rows ``(t, W_emp, W_family...)`` for every ``t`` in ``ts``.

    ``fits`` maps family to fitted distribution.
    """
    ts = np.asarray(ts)
    cols = {f: hazard_closed_form(d, ts, dt) for f, d in fits.items()}
    rows = []
    for i, t in enumerate(ts):
        rows.append((int(t), empirical_hazard(intervals, t, dt),
                     *(float(np.atleast_1d(cols[f])[i]) for f in fits)))
    return rows
