"""Torus knots: Alexander polynomials, and two knots whose L2 torsions of the
abelianization coincide although their Alexander polynomials differ.

    python demos/torus_knots.py
"""

from twistalex.knots import torus_presentation
from twistalex.l2 import l2_from_alexander, mp_coefficients, mp_degree, torus_closed_form
from twistalex.torsion import alexander_polynomial

for p, q in [(2, 3), (2, 5), (3, 4), (3, 7), (4, 5)]:
    delta = alexander_polynomial(torus_presentation(p, q))
    f = l2_from_alexander(delta)
    print(f"T({p},{q})  deg Delta = {delta.degree():>2}  L2 = {f.render()}")
    # every root of a torus knot polynomial is a root of unity, so all bases snap to 1
    assert f == torus_closed_form(p, q)
    assert mp_degree(f) == (p - 1) * (q - 1) - 1 and mp_coefficients(f).monic

a = alexander_polynomial(torus_presentation(3, 7))
b = alexander_polynomial(torus_presentation(4, 5))
print()
print("Delta T(3,7):", a.render())
print("Delta T(4,5):", b.render())
print("same L2 form:", l2_from_alexander(a) == l2_from_alexander(b))
