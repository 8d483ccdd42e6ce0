"""
The hazard of the next extreme
==============================

W(dt | t) is the chance that the next extreme arrives within ``dt`` days
given that ``t`` quiet days have already passed. For the fitted
heavy-tailed families it falls with ``t``: right after an extreme, another
one is most likely. The empirical column counts the same thing directly on
the observed intervals and stops where no interval is long enough.
"""

import math
import sys

import numpy as np

from extreme_hazard import (compare_fits, compute_returns, extract_intervals, load_prices,
                            mark_extremes, quantile_threshold)
from extreme_hazard.hazard import hazard_curve
from extreme_hazard.synthetic import garch_prices

prices = load_prices(sys.argv[1]) if len(sys.argv) > 1 else garch_prices(30000, seed=1)
r = compute_returns(prices, "absolute")
thr = quantile_threshold(r, 0.975)
iv = extract_intervals(mark_extremes(r, thr))
cmp = compare_fits(iv, thr.tau_q)

ts = [0, 1, 2, 5, 10, 20, 50, 100, 200, 400]
print(f"absolute returns, 97.5% threshold, {iv.n} intervals, tau_Q = {thr.tau_q:.0f}")
print("    t    W_emp    W_sE     W_qE     W_W")
for row in hazard_curve(iv, cmp.fits, ts, dt=1):
    t, emp, *model = row
    emp_s = "   -   " if math.isnan(emp) else f"{emp:.4f}"
    print(f"{t:5d}  {emp_s}  " + "  ".join(f"{w:.4f}" for w in model))

# a memoryless process would give a flat line at 1 - exp(-1/tau_Q)
print(f"\nPoisson reference: {-np.expm1(-1 / thr.tau_q):.4f}")
