"""Independent reference computations shared by the test modules."""

import math

import numpy as np
from scipy import integrate

from extreme_hazard.distfit import FAMILIES, Family, logpdf, make_distribution


def moments(dist, orders=(0, 1)):
    """``E[tau^m]`` by quadrature in ``s = ln tau``, which removes both the
    Weibull singularity at 0 and the slow power-law tail."""
    lt = math.log(dist.tau_q)

    def f(s, m):
        if abs(s) > 700:
            return 0.0
        return math.exp(float(logpdf(dist, math.exp(s))) + (1 + m) * s)

    edges = [-np.inf, lt - 10, lt - 3, lt, lt + 3, lt + 10, np.inf]
    return [sum(integrate.quad(f, a, b, args=(m,), epsabs=0, epsrel=1e-11, limit=400)[0]
                for a, b in zip(edges[:-1], edges[1:])) for m in orders]


def random_distribution(rng):
    """Random admissible member: shapes kept where the moment integrals converge
    in double precision, tau_q in [5, 200]."""
    fam = FAMILIES[rng.integers(3)]
    shape = rng.uniform(1.01, 1.49) if fam is Family.Q_EXP else rng.uniform(0.15, 0.98)
    return make_distribution(fam, shape, rng.uniform(5, 200))


def brute_confusion(alarms, flags, dt):
    """Quadratic window scan: day i is scored when i + dt is still inside the series."""
    n = len(flags)
    c = {"n11": 0, "n00": 0, "n01": 0, "n10": 0}
    for i in range(n - dt):
        hit = any(flags[j] for j in range(i + 1, i + dt + 1))
        c[_key(alarms[i], hit)] += 1
    return c


def _key(alarm, hit):
    if alarm and hit:
        return "n11"
    if alarm:
        return "n10"
    if hit:
        return "n01"
    return "n00"
