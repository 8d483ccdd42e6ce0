"""
How long between extremes?
==========================

Once extremes are marked, the gaps between them (in trading days) are the
recurrence intervals. Their distribution is strongly right-skewed, and
consecutive gaps are correlated: extremes cluster. Three one-parameter
families are fitted by maximum likelihood with the mean pinned to the
threshold's nominal recurrence time.
"""

import sys

from extreme_hazard import (compare_fits, compute_returns, describe, extract_intervals,
                            load_prices, mark_extremes, quantile_threshold)
from extreme_hazard.intervals import stars
from extreme_hazard.synthetic import garch_prices

prices = load_prices(sys.argv[1]) if len(sys.argv) > 1 else garch_prices(30000, seed=1)
r = compute_returns(prices, "negative")

print("  Q      n    mean  median   skew    kurt   rho1     LBQ(30)")
fits = {}
for q in (0.95, 0.975, 0.99):
    thr = quantile_threshold(r, q)
    iv = extract_intervals(mark_extremes(r, thr))
    s = describe(iv)
    rho1, lvl = s.acf[1]
    print(f"{q:.3f} {s.n:5d} {s.mean:7.1f} {s.median:6.1f} {s.skew:6.2f} {s.kurt:7.1f} "
          f"{rho1:6.3f}{stars(lvl):3s} {s.lbq[0]:8.1f}")
    fits[q] = compare_fits(iv, thr.tau_q)

print("\nshape estimates and log-likelihoods (winner marked with *)")
for q, cmp in fits.items():
    cells = []
    for fam, f in cmp.fits.items():
        mark = "*" if fam is cmp.winner else " "
        cells.append(f"{f.shape_name}={f.shape:.3f} lnL={f.log_lik:9.2f}{mark}")
    print(f"{q:.3f}  " + "   ".join(cells))

# heavier thresholds usually give smaller mu and alpha and a larger q
