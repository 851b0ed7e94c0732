"""
The fixed-C curve as C approaches -1
=====================================

Near C = -1 the curve hugs p' = 1 - p. Three regimes admit leading-order
formulas; each is compared with a direct solve of the boundary equation.
"""

from laststop import appendix_asymptotics, near_boundary_solve
from laststop.errors import WBranchError

eta = 0.09
print("p near 1:  exact xi =", near_boundary_solve("p1", eta=eta),
      " leading order =", appendix_asymptotics("p1", "inverse", eta).output)

eps = 1e-20
print("diagonal:  exact eta =", near_boundary_solve("diag", eps=eps),
      " leading order =", appendix_asymptotics("diag", "forward", eps).output)

# the anti-diagonal solve works in log(delta): delta is far below double
# resolution of p' itself
delta = near_boundary_solve("antidiag", eta=0.035, p=0.75)
r = appendix_asymptotics("antidiag", "forward", delta, p=0.75)
print(f"anti-diagonal: delta = {delta:.12e}, C6 = {r.c6:.8f}, ln(B)/B = {r.ln_b_over_b:.11f}")
try:
    appendix_asymptotics("antidiag", "inverse", 0.035, p=0.75)
except WBranchError as exc:
    print("Lambert inversion unavailable here:", exc)
