"""
Not knowing n or p
===================

When n or p is unknown, the optimal waiting time is replaced by a plug-in
estimate from the counts seen so far. The rule commits when the clock passes
the estimate. Below: the approximate law of the count at that moment and the
resulting success probability.
"""

import numpy as np

from laststop import analytic_success, mstar_dist
from laststop.incomplete import classic_count_dist

n, p = 500, 0.03
for case in ("pknown", "nknown", "none"):
    d = mstar_dist(case, n, p)
    print(
        f"{case:7s} success ~ {analytic_success(case, n, p):.4f}   "
        f"mode of m* = {int(np.argmax(d.phi))}   raw mass = {d.raw_mass:.4f}"
    )

classic = classic_count_dist(n, p)
print("with full information the count at x* peaks at", int(np.argmax(classic)))
