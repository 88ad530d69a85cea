"""
MacMahon-type partition series
==============================

Computes the three marker-product families, checks them against a direct
count over partitions, and scans the mod 3 and mod 5 congruences.
"""
from __future__ import annotations

from quasiseries.partitions import (
    family_sum,
    macmahon_c,
    macmahon_u,
    macmahon_u_star,
    multiplicity_oracle,
)
from quasiseries.verify import congruence_scan

ORDER = 30

# first coefficients of each family for small t
for t in range(1, 4):
    for name, fn in (("U", macmahon_u), ("U*", macmahon_u_star), ("C", macmahon_c)):
        print(f"{name}_{2 * t}:", [int(c) for c in fn(t, 12).coeffs])

# coefficient n of U_2t sums, over partitions of n with t distinct part sizes,
# the product of the multiplicities
for t in range(4):
    u = macmahon_u(t, ORDER)
    assert all(u[n] == multiplicity_oracle(t, n, "all") for n in range(ORDER + 1))
print("partition counts agree up to n =", ORDER)

# summing a family over t collapses to an infinite product
print("sum_t U_2t:", [int(c) for c in family_sum("u", 15).coeffs])

# congruences read off the summed families
for which, n_max in (("u_mod3", 100), ("kappa_mod3", 60), ("fibo_mod5", 500)):
    report = congruence_scan(which, n_max)
    print(f"{which}: {report.status} ({report.detail})")
