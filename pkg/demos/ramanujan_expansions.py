"""
Ramanujan's U and V series in the Eisenstein basis
===================================================

Builds U_2t and V_2t two independent ways, solves each for its
E_2, E_4, E_6 expansion, and compares the V slice of the integer recursion.
"""
from __future__ import annotations

from quasiseries.graded import express_in_basis
from quasiseries.recursions import cv_table
from quasiseries.verify import ramanujan_u, ramanujan_v

ORDER = 60

# the conjugated recurrence r -> c*D(r) + E_2*r, against the quotient of theta-type sums
for t in range(5):
    assert ramanujan_u(t, ORDER, "conjugated") == ramanujan_u(t, ORDER, "quotient")
    assert ramanujan_v(t, ORDER, "conjugated") == ramanujan_v(t, ORDER, "quotient")
print("both constructions agree for t <= 4 at order", ORDER)

# exact solve in the E basis; keys are exponents of (E_2, E_4, E_6)
for name, fn in (("U", ramanujan_u), ("V", ramanujan_v)):
    for t in (2, 3, 4):
        poly = express_in_basis(fn(t, ORDER), t, "E")
        terms = ", ".join(f"{v} E2^{a} E4^{b} E6^{c}" for (a, b, c), v in poly.items())
        print(f"{name}_{2 * t} = {terms}")

# the integer recursion gives the V coefficients directly
cv = cv_table(4)
print("c_v on weight level 4:", dict(cv.level(4)))
