"""
Optimal thresholds for stopping on the last +1 or -1
=====================================================

Each trial is +1 with probability p, -1 with probability p' and 0 otherwise.
The threshold strategy accepts a -1 once D trials remain and either mark once
C trials remain. Here we locate the best (C, D), first as reals and then as
integers.
"""

from laststop import new_model, solve_thresholds, tie_point, w_closed, w_recurrence

model = new_model(0.09, 0.05)
sol = solve_thresholds(model)
print(f"continuous optimum  C* = {sol.c_star:.9f}  D* = {sol.d_star:.9f}  w = {sol.w_continuous:.12f}")
print(f"integer optimum     C  = {sol.c_discrete}            D  = {sol.d_discrete}           w = {sol.w_discrete:.12f}")
print(f"region row: {sol.region.row.name}")

# the closed form does not depend on the horizon: with n = 40 the same
# strategy starts accepting -1 at index 28 and +1 at index 33
print("backward induction at n = 40:", w_recurrence(model, 40, 33, 28))

# rounding the continuous optimum is not always right; the two nearest
# integer strategies swap places at a tie point in p
p_tie = tie_point(0.05, (6, 12), (7, 12), (0.09, 0.095))
print(f"(6, 12) and (7, 12) tie at p = {p_tie:.14f}")
for p in (p_tie - 1e-3, p_tie + 1e-3):
    m = new_model(p, 0.05)
    print(f"  p = {p:.5f}: w(6,12) - w(7,12) = {w_closed(m, 6, 12) - w_closed(m, 7, 12):+.3e}")
