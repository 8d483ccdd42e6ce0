"""
Candidate recurrence-interval distributions and their one-parameter MLE.

Each family has a single free shape parameter; the remaining parameters are
pinned by normalisation and by requiring the mean interval to equal
``tau_q``:

    stretched_exp   p = a exp(-(b t)^mu)                         mu in (0, 1)
    q_exp           p = (2-q) lam [1 + (q-1) lam t]^(-1/(q-1))   q  in (1, 1.5)
    weibull         p = (alpha/beta) (t/beta)^(alpha-1) exp(-(t/beta)^alpha)
                                                                 alpha in (0, 1)

The shape is estimated by maximising the log-likelihood over a grid with
spacing 1e-6. Grid points are addressed by integer index ``k`` so that shape
values are bit-identical whichever search visits them.
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import gammaln

GRID = 10**6  # grid points per unit shape


class Family(str, Enum):
    STRETCHED_EXP = "stretched_exp"
    Q_EXP = "q_exp"
    WEIBULL = "weibull"


FAMILIES = tuple(Family)

# open shape intervals, in grid units
_BOUNDS = {
    Family.STRETCHED_EXP: (0, GRID),
    Family.Q_EXP: (GRID, 3 * GRID // 2),
    Family.WEIBULL: (0, GRID),
}

SHAPE_NAMES = {Family.STRETCHED_EXP: "mu", Family.Q_EXP: "q", Family.WEIBULL: "alpha"}


class BoundarySolutionWarning(UserWarning):
    """The likelihood maximum sits on the first or last grid point."""


@dataclass(frozen=True)
class FittedDistribution:
    """A member of one of the three families, plus fit diagnostics.

    ``params`` holds the derived scale parameters: ``a`` and ``b`` for the
    stretched exponential, ``lam`` for the q-exponential, ``beta`` for the
    Weibull.
    """

    family: Family
    shape: float
    params: dict
    tau_q: float
    log_lik: float = float("nan")
    n: int = 0
    boundary: bool = False
    grid_index: int | None = field(default=None, compare=False)

    @property
    def shape_name(self) -> str:
        return SHAPE_NAMES[self.family]


@dataclass(frozen=True)
class GridSpec:
    coarse: float = 1e-3
    fine: float = 1e-6
    exhaustive: bool = False

    @classmethod
    def from_name(cls, name):
        if isinstance(name, GridSpec):
            return name
        if name in (None, "fast"):
            return cls()
        if name == "exhaustive":
            return cls(exhaustive=True)
        raise ValueError(f"unknown grid {name!r} (expected 'fast' or 'exhaustive')")


def _check_shape(family, shape):
    lo, hi = (b / GRID for b in _BOUNDS[family])
    if family is Family.Q_EXP and shape >= 1.5:
        raise ValueError(f"q={shape} >= 1.5: the q-exponential has no finite mean")
    if not lo < shape < hi:
        raise ValueError(f"{SHAPE_NAMES[family]}={shape} outside ({lo}, {hi})")


def derive_scale(family, shape: float, tau_q: float) -> dict:
    """Scale parameters that normalise the density and fix its mean at ``tau_q``."""
    family = Family(family)
    _check_shape(family, shape)
    if not tau_q > 1:
        raise ValueError(f"tau_q={tau_q} must exceed 1")
    if family is Family.STRETCHED_EXP:
        g1, g2 = math.lgamma(1 / shape), math.lgamma(2 / shape)
        try:
            return {
                "a": math.exp(math.log(shape) + g2 - 2 * g1 - math.log(tau_q)),
                "b": math.exp(g2 - g1 - math.log(tau_q)),
            }
        except OverflowError:
            raise OverflowError(f"scale parameters overflow for mu={shape}, tau_q={tau_q}") from None
    if family is Family.Q_EXP:
        return {"lam": 1.0 / (tau_q * (3 - 2 * shape))}
    return {"beta": tau_q / math.gamma(1 + 1 / shape)}


def make_distribution(family, shape: float, tau_q: float) -> FittedDistribution:
    family = Family(family)
    return FittedDistribution(family, float(shape), derive_scale(family, shape, tau_q), float(tau_q))


def logpdf(dist: FittedDistribution, tau):
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValueError("recurrence intervals must be non-negative")
    p, s = dist.params, dist.shape
    with np.errstate(divide="ignore"):
        if dist.family is Family.STRETCHED_EXP:
            return math.log(p["a"]) - (p["b"] * tau) ** s
        if dist.family is Family.Q_EXP:
            lam = p["lam"]
            return math.log((2 - s) * lam) - np.log1p((s - 1) * lam * tau) / (s - 1)
        z = tau / p["beta"]
        return math.log(s / p["beta"]) + (s - 1) * np.log(z) - z**s


def pdf(dist: FittedDistribution, tau):
    """Density at ``tau >= 0`` (the Weibull density diverges at 0 when alpha < 1)."""
    return np.exp(logpdf(dist, tau))


def _phi(x):
    # log1p(x)/x, exact limit 1 at x = 0
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(x == 0, 1.0, np.log1p(x) / np.where(x == 0, 1.0, x))


class _Data:
    """Interval sample compressed to unique values with multiplicities."""

    def __init__(self, intervals, tau_q):
        values = np.asarray(getattr(intervals, "values", intervals), dtype=float)
        if values.ndim != 1 or values.size == 0 or np.any(values <= 0):
            raise ValueError("intervals must be a non-empty 1-d array of positive values")
        self.tau, w = np.unique(values, return_counts=True)
        self.w = w.astype(float)
        self.ell = np.log(self.tau)
        self.N = float(values.size)
        self.n = values.size
        self.sum_wl = float(self.w @ self.ell)
        self.tau_q = float(tau_q)
        self.log_tq = math.log(tau_q)


def _loglik_shapes(family, shapes, data: _Data, block=512):
    """Exact log-likelihood at each shape in ``shapes`` (1-d float array)."""
    out = np.empty(shapes.size)
    for i in range(0, shapes.size, block):
        s = shapes[i:i + block]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            if family is Family.STRETCHED_EXP:
                lb = gammaln(2 / s) - gammaln(1 / s) - data.log_tq
                la = np.log(s) + lb - gammaln(1 / s)
                big = np.exp(s[:, None] * (lb[:, None] + data.ell[None, :]))
                val = data.N * la - (big * data.w).sum(axis=1)
            elif family is Family.Q_EXP:
                lam = 1.0 / (data.tau_q * (3 - 2 * s))
                c = (s - 1) * lam
                phi = _phi(c[:, None] * data.tau[None, :])
                val = data.N * np.log(lam * (2 - s)) - lam * (phi * (data.w * data.tau)).sum(axis=1)
            else:
                g = data.log_tq - gammaln(1 + 1 / s)
                big = np.exp(s[:, None] * (data.ell[None, :] - g[:, None]))
                val = (data.N * np.log(s) + (s - 1) * data.sum_wl - data.N * s * g
                       - (big * data.w).sum(axis=1))
        out[i:i + block] = val
    out[~np.isfinite(out)] = -np.inf
    return out


def _loglik_k(family, ks, data):
    return _loglik_shapes(family, np.asarray(ks, dtype=np.int64) / GRID, data)


def log_likelihood(family, shape: float, tau_q: float, intervals) -> float:
    """Closed-form log-likelihood of ``intervals`` under the constrained family."""
    family = Family(family)
    derive_scale(family, shape, tau_q)
    data = _Data(intervals, tau_q)
    return float(_loglik_shapes(family, np.array([float(shape)]), data)[0])


def _argmax(ks, vals):
    # first maximum, i.e. the smallest shape on ties
    j = int(np.argmax(vals))
    return int(ks[j]), float(vals[j])


def _two_stage(family, data, coarse_step, fine_step):
    lo, hi = _BOUNDS[family]
    cstep = round(coarse_step * GRID)
    fstep = max(1, round(fine_step * GRID))
    ks = np.arange(lo + cstep, hi - cstep + 1, cstep)
    kc, _ = _argmax(ks, _loglik_k(family, ks, data))
    ks = np.arange(max(lo + fstep, kc - cstep), min(hi - fstep, kc + cstep) + 1, fstep)
    return _argmax(ks, _loglik_k(family, ks, data))


def _bound(family, k0, k1, data):
    """Upper bound of the log-likelihood over grid indices ``[k0, k1]``.

    Each term is bounded separately using the monotonicity of the derived
    scale parameters in the shape (checked in the test suite).
    """
    s0, s1 = k0 / GRID, k1 / GRID
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if family is Family.STRETCHED_EXP:
            # ln a and ln b both decrease with mu
            lb0 = math.lgamma(2 / s0) - math.lgamma(1 / s0) - data.log_tq
            lb1 = math.lgamma(2 / s1) - math.lgamma(1 / s1) - data.log_tq
            la0 = math.log(s0) + lb0 - math.lgamma(1 / s0)
            e = np.minimum.reduce([s * (lb + data.ell) for s in (s0, s1) for lb in (lb0, lb1)])
            ub = data.N * la0 - data.w @ np.exp(e)
        elif family is Family.Q_EXP:
            # lam, lam(2-q) and c increase with q; log1p(x)/x decreases in x
            lam0 = 1 / (data.tau_q * (3 - 2 * s0))
            lam1 = 1 / (data.tau_q * (3 - 2 * s1))
            ub = (data.N * math.log(lam1 * (2 - s1))
                  - lam0 * (_phi((s1 - 1) * lam1 * data.tau) @ (data.w * data.tau)))
        else:
            # ln beta increases with alpha
            g0 = data.log_tq - math.lgamma(1 + 1 / s0)
            g1 = data.log_tq - math.lgamma(1 + 1 / s1)
            e = np.minimum.reduce([s * (data.ell - g) for s in (s0, s1) for g in (g0, g1)])
            ub = (data.N * math.log(s1) + max((s0 - 1) * data.sum_wl, (s1 - 1) * data.sum_wl)
                  - data.N * min(s0 * g0, s0 * g1, s1 * g0, s1 * g1) - data.w @ np.exp(e))
    return float(ub) if math.isfinite(ub) else math.inf


def _exhaustive(family, data, leaf=256, chunk=1000, fanout=8):
    """Argmax over every grid point, by branch and bound.

    Blocks whose upper bound is below the incumbent (minus a rounding
    margin) cannot contain the maximum; all others are split until they are
    small enough to evaluate point by point. The result equals a full sweep,
    tie rule included.
    """
    lo, hi = _BOUNDS[family]
    ks = np.arange(lo + chunk, hi - chunk + 1, chunk)
    best_k, best = _argmax(ks, _loglik_k(family, ks, data))
    heap = []
    for k0 in range(lo + 1, hi, chunk):
        k1 = min(k0 + chunk - 1, hi - 1)
        heapq.heappush(heap, (-_bound(family, k0, k1, data), k0, k1))
    while heap:
        neg_ub, k0, k1 = heapq.heappop(heap)
        margin = 1e-8 * (1 + abs(best) + data.N)
        if -neg_ub < best - margin:
            break
        if k1 - k0 < leaf:
            kk = np.arange(k0, k1 + 1)
            k, v = _argmax(kk, _loglik_k(family, kk, data))
            if v > best or (v == best and k < best_k):
                best_k, best = k, v
            continue
        edges = np.linspace(k0, k1 + 1, fanout + 1).astype(np.int64)
        for a, b in zip(edges[:-1], edges[1:] - 1):
            if b >= a:
                heapq.heappush(heap, (-_bound(family, int(a), int(b), data), int(a), int(b)))
    return best_k, best


def _sweep(family, data, block=20000):
    """Literal evaluation of every grid point. Slow; used to validate ``_exhaustive``."""
    lo, hi = _BOUNDS[family]
    best_k, best = None, -np.inf
    for k0 in range(lo + 1, hi, block):
        ks = np.arange(k0, min(k0 + block, hi))
        k, v = _argmax(ks, _loglik_k(family, ks, data))
        if v > best:
            best_k, best = k, v
    return best_k, best


def fit_mle(family, intervals, tau_q: float, grid="fast") -> FittedDistribution:
    """Grid-search maximum likelihood estimate of the family's shape.

    ``grid`` is ``"fast"`` (coarse 1e-3 sweep then a 1e-6 sweep within one
    coarse step of the coarse optimum), ``"exhaustive"`` (the maximum over
    every 1e-6 grid point) or a :class:`GridSpec`. Ties go to the smaller
    shape. A maximum on the outermost grid point is flagged via
    ``boundary=True`` and a :class:`BoundarySolutionWarning`.
    """
    family = Family(family)
    spec = GridSpec.from_name(grid)
    data = _Data(intervals, tau_q)
    if data.n < 10:
        raise ValueError(f"need at least 10 intervals to fit, got {data.n}")
    if not tau_q > 1:
        raise ValueError(f"tau_q={tau_q} must exceed 1")
    if spec.exhaustive:
        if round(spec.fine * GRID) != 1:
            raise ValueError("exhaustive search is defined on the 1e-6 grid")
        k, ll = _exhaustive(family, data)
    else:
        k, ll = _two_stage(family, data, spec.coarse, spec.fine)
    lo, hi = _BOUNDS[family]
    fstep = max(1, round(spec.fine * GRID))
    boundary = k - fstep <= lo or k + fstep >= hi
    shape = k / GRID
    if boundary:
        warnings.warn(f"{family.value}: likelihood maximum at the grid edge "
                      f"{SHAPE_NAMES[family]}={shape}", BoundarySolutionWarning, stacklevel=2)
    return FittedDistribution(family, shape, derive_scale(family, shape, tau_q), float(tau_q),
                              log_lik=ll, n=data.n, boundary=boundary, grid_index=k)


@dataclass(frozen=True)
class FitComparison:
    fits: dict  # Family -> FittedDistribution
    ranking: tuple  # families by decreasing log-likelihood

    @property
    def winner(self) -> Family:
        return self.ranking[0]

    def __getitem__(self, family):
        return self.fits[Family(family)]


def compare_fits(intervals, tau_q: float, grid="fast") -> FitComparison:
    """Fit all three families to the same intervals and rank by log-likelihood."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundarySolutionWarning)
        fits = {f: fit_mle(f, intervals, tau_q, grid) for f in FAMILIES}
    ranking = tuple(sorted(FAMILIES, key=lambda f: (-fits[f].log_lik, FAMILIES.index(f))))
    return FitComparison(fits, ranking)
