"""Betti number tables for M_0,n and Brown's partial compactification.

The Brown numbers come from compositional inversion of the moduli series and are
cross-checked against the stratified Euler characteristic.  Pass ``--kernel`` to
also recompute them from the cobar rows (n <= 7, a few seconds).
"""

import sys

from dihedral_gravity.arnold import betti_moduli
from dihedral_gravity.cobar import brown_betti_kernel
from dihedral_gravity.series import brown_betti_series, cayley_count, euler_betti, poincare_moduli

use_kernel = "--kernel" in sys.argv

print(f"{'n':>3}  {'dissections':>11}  M_0,n Betti")
for n in range(3, 10):
    total = sum(cayley_count(n, k) for k in range(n - 2))
    moduli = betti_moduli(n) if n <= 8 else list(poincare_moduli(n).coeffs)
    print(f"{n:>3}  {total:>11}  {moduli}")

print(f"\n{'n':>3}  Brown Betti (series)")
for n in range(3, 13):
    series = brown_betti_series(n)
    tags = []
    if n <= 10:
        tags.append("euler ok" if euler_betti(n) == series else "EULER MISMATCH")
    if use_kernel and n <= 7:
        tags.append("kernel ok" if brown_betti_kernel(n) == series else "KERNEL MISMATCH")
    print(f"{n:>3}  {series}  {' '.join(tags)}")
