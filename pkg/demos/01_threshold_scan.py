"""
Choosing what counts as an extreme return
=========================================

Daily losses of a stock index have a power-law upper tail. A threshold
that is too low lets ordinary noise in, one that is too high leaves a
handful of points. The Hill/KS scan fits a Pareto tail above every
candidate cutoff and keeps the cutoff whose fit is closest to the data.

Run with a ``date,level`` CSV, or without arguments for a synthetic
GARCH series::

    python demos/01_threshold_scan.py [prices.csv]
"""

import sys

import numpy as np

from extreme_hazard import compute_returns, load_prices, quantile_threshold
from extreme_hazard.extremes import scan_evt_threshold, select_threshold
from extreme_hazard.synthetic import garch_prices

prices = load_prices(sys.argv[1]) if len(sys.argv) > 1 else garch_prices(30000, seed=1)
print(f"{len(prices)} prices, {prices.dates[0]} .. {prices.dates[-1]}")

for kind in ("negative", "positive", "absolute"):
    r = compute_returns(prices, kind)
    scan = scan_evt_threshold(r)
    best = select_threshold(scan)

    # a coarse look at the scan: tail index estimate and KS distance
    print(f"\n{kind} returns: {len(scan)} admissible cutoffs")
    print("   cutoff   1/gamma      d_KS      k")
    for i in np.linspace(0, len(scan) - 1, 8).astype(int):
        print(f"  {scan.candidates[i]:.4f}   {scan.gamma_inv[i]:7.3f}   {scan.ks_stat[i]:.4f}"
              f"  {scan.tail_counts[i]:5d}")
    print(f"  chosen x_t = {best.x_t:.4f}: equivalent quantile {best.quantile_equiv:.4f}, "
          f"mean interval {best.tau_q:.1f} days")

    # the three quantile rules for comparison
    for q in (0.95, 0.975, 0.99):
        print(f"  {q:.3f} quantile -> x_t = {quantile_threshold(r, q).x_t:.4f}")
