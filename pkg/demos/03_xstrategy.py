"""
Waiting in continuous time
===========================

n trials arrive at uniform random times in [0, 1]. Ignore everything before
time x, then take the first nonzero mark. The best x depends on p, but the
best success probability does not.
"""

from laststop import new_model, success_prob_x, x_star, x_star_unequal, xstrategy_exact
from laststop.xstrategy import xstrategy_asymptotic

n = 500
r = xstrategy_exact(n, 0.03)
print(f"n = {n}: x* = {r.x_star:.9f}, success = {r.p_star:.12f}, x* hits 0 below p = {r.p_tilde:.6f}")

for p in (0.01, 0.03, 0.1, 0.3):
    print(f"  p = {p:<5} x* = {x_star(n, p):.6f}  success = {success_prob_x(n, p, x_star(n, p)):.15f}")

a = xstrategy_asymptotic(n, 0.03)
print(f"large-n expansion: x* ~ {a.x_approx:.9f}, success ~ {a.p_star_approx:.12f}")

# with p > p' the -1 marks are taken at once and +1 only near the end
u = x_star_unequal(new_model(0.09, 0.05), 40)
print(f"p = 0.09, p' = 0.05, n = 40: +1 threshold {u.c_d}, x* = {u.x_star:.12f}, success = {u.p_at_x_star:.12f}")
