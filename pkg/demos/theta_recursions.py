"""
Derivatives of theta_4 in two level-2 bases
============================================

Expands D^t(theta_4)/theta_4 with the Theta-basis and G-basis recursions and
shows why the Theta diagonal convention matters.
"""
from __future__ import annotations

from quasiseries.generators import DOUBLED, PLAIN, eisenstein
from quasiseries.graded import GradedPoly, eval_poly, express_in_basis
from quasiseries.recursions import cc_table, cc_tilde_table
from quasiseries.verify import dtheta4_ratio

ORDER = 60

# weight-4 level of the Theta-basis table: keys are (E_2, Theta_b,c) exponents
level = cc_table(2).level(2)
print("Theta basis, weight 4:", level)
plain = GradedPoly("Theta", level, PLAIN)
doubled = GradedPoly("Theta", level, DOUBLED)
target = dtheta4_ratio(2, ORDER)
print("plain diagonal matches:", eval_poly(plain, ORDER) == target)
print("doubled diagonal matches:", eval_poly(doubled, ORDER) == target)

# E_4 needs the doubled reading for its small-integer Theta form
print("E_4 (doubled):", dict(express_in_basis(eisenstein(2, ORDER), 2, "Theta", DOUBLED).items()))
print("E_4 (plain):  ", dict(express_in_basis(eisenstein(2, ORDER), 2, "Theta", PLAIN).items()))

# the G-basis table, with E_2, G_2, E_4 as generators
tilde = cc_tilde_table(6)
for t in range(1, 7):
    poly = GradedPoly("G", tilde.level(t))
    assert eval_poly(poly, ORDER) == dtheta4_ratio(t, ORDER)
print("G-basis levels 1..6 reproduce D^t(theta_4)/theta_4")

# the same polynomial under the printed raising coefficient drifts from level 3
printed = cc_tilde_table(3, "printed")
print("level 3 corrected:", tilde.level(3))
print("level 3 printed:  ", printed.level(3))
