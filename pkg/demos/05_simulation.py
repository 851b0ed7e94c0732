"""
Simulating the crossing rules
==============================

Each path draws n uniform arrival times and iid marks. Path i depends only
on (seed, i), so results do not change with the number of threads.
"""

from laststop import monte_carlo, new_model
from laststop.xstrategy import x_star

n, p = 500, 0.03
model = new_model(p, p)
for strategy in ("pknown", "nknown", "none", x_star(n, p)):
    r = monte_carlo(strategy, model, n, 20_000, seed=1)
    print(
        f"{r.case:24s} simulated {r.success_rate:.4f} +- {r.std_error:.4f}   "
        f"analytic {r.analytic_reference:.4f}"
    )

# the histogram of the crossing count, next to its analytic approximation
r = monte_carlo("pknown", model, n, 20_000, seed=1)
for mu, count, phi in r.histogram_rows(smooth=True)[235:244]:
    print(f"  mu = {mu}-{mu + 1}: {count / r.paths:.4f} observed, {phi:.4f} predicted")
