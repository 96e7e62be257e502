"""The figure-eight knot from three angles: classical torsion, the L2 form of
its abelianization, and twisted torsion from two ingested representations.

    python demos/figure_eight.py
"""

import math

from twistalex.l2 import (
    constancy_radius,
    l2_from_alexander,
    mp_coefficients,
    mp_eval,
    mp_symmetry_check,
)
from twistalex.table import load_bundled_table
from twistalex.torsion import alexander_torsion, twisted_torsion, twisted_torsion_numeric

rec = next(r for r in load_bundled_table() if r.name == "4_1")
P = rec.presentation("braid")

tau = alexander_torsion(P)
print("tau(K) =", tau.render(), "| degree", tau.degree(), "| monic", tau.is_monic())

f = l2_from_alexander(tau.numerator)
sym = mp_symmetry_check(f)
print("L2 form:", f.render())
print(f"  f(1) = {mp_eval(f, 1.0):.10f}, monic = {mp_coefficients(f).monic}, f(1/t) = t^{sym.n} f(t)")

h = rec.entropy.value
print(f"  constancy radius {constancy_radius(f):.12f} vs exp(-h) {math.exp(-h):.12f}")

for rep in rec.load_representations():
    if rep.ring.exact:
        t = twisted_torsion(P, rep)
        n = twisted_torsion_numeric(P, rep.to_complex())
        print(f"rational rep: tau = {t.render()}")
        print(f"  exact degree {t.degree()}, numeric degree {n.degree}")
    else:
        n = twisted_torsion_numeric(P, rep)
        print(f"holonomy rep: numeric degree {n.degree}, monic {n.monic}, "
              f"condition {n.report['condition']:.3g}")
