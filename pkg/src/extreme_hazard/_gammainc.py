"""Log of the regularized upper incomplete gamma function Q(s, x).

Series for P(s, x) below the ``x = s + 1`` pivot, modified Lentz continued
fraction above it. Working in logs keeps survival ratios finite far into
the tail where Q itself underflows.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

_EPS = 1e-16
_TINY = 1e-300
_MAXIT = 2000


def _log_p_series(s, x):
    # P(s,x) = x^s e^-x / Gamma(s+1) * sum_n x^n / ((s+1)...(s+n))
    term = np.ones_like(x)
    total = np.ones_like(x)
    a = s.copy()
    live = np.ones(x.shape, dtype=bool)
    for _ in range(_MAXIT):
        a = a + 1
        term = np.where(live, term * x / a, 0.0)
        total = total + term
        # freeze converged elements so results do not depend on the batch
        live &= term > total * _EPS
        if not live.any():
            break
    return s * np.log(x) - x - gammaln(s + 1) + np.log(total)


def _log_q_cf(s, x):
    b = x + 1 - s
    c = np.full_like(x, 1 / _TINY)
    d = 1 / b
    h = d.copy()
    live = np.ones(x.shape, dtype=bool)
    for i in range(1, _MAXIT):
        an = -i * (i - s)
        b = b + 2
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1 / d
        delta = np.where(live, d * c, 1.0)
        h = h * delta
        live &= np.abs(delta - 1) > _EPS
        if not live.any():
            break
    return s * np.log(x) - x - gammaln(s) + np.log(h)


def log_gammaincc(s, x):
    """``ln Q(s, x)`` for ``s > 0``, ``x >= 0`` (broadcasting)."""
    s, x = np.broadcast_arrays(np.asarray(s, float), np.asarray(x, float))
    shape = s.shape
    s, x = s.ravel().copy(), x.ravel().copy()
    if np.any(s <= 0) or np.any(x < 0):
        raise ValueError("log_gammaincc requires s > 0 and x >= 0")
    out = np.zeros_like(x)
    lo = (x > 0) & (x < s + 1)
    hi = x >= s + 1
    if lo.any():
        with np.errstate(under="ignore"):
            out[lo] = np.log1p(-np.exp(_log_p_series(s[lo], x[lo])))
    if hi.any():
        out[hi] = _log_q_cf(s[hi], x[hi])
    return out.reshape(shape)
