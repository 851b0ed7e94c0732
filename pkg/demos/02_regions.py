"""
Where the thresholds change character
======================================

The sign of two stationarity functions at C = 0 splits the (p, p') triangle
into regions. The curves below are their zero sets; the classifier reports
the region and the practical thresholds for any point.
"""

import numpy as np

from laststop import classify, gamma3, gamma_curve, gamma_endpoints, new_model, p_bullet

for kind, cfix in [("gamma1", None), ("gamma2", None), ("gammaC", -0.3)]:
    (a, _), (b, _) = gamma_endpoints(kind, cfix)
    print(f"{kind:7s} runs from ({a:.10f}, {a:.10f}) to ({b:.10f}, 0)")

pb = p_bullet()
print("gamma1 and gamma2 cross at", pb)
print("gamma3 passes through it too:", gamma3(pb[0]))

# a few points on gamma1, ready for plotting
for p in np.linspace(0.43, 0.62, 5):
    print(f"  p = {p:.3f}  p' = {gamma_curve('gamma1', p):.6f}")

for p, pp in [(0.09, 0.05), (0.09, 0.08999), (0.45, 0.44), (0.7, 0.1)]:
    r = classify(new_model(p, pp))
    print(f"({p}, {pp}) -> {r.row.name:18s} practical C = {r.practical_c:.4f}, D = {r.practical_d:.4f}")
