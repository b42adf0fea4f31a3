"""A perturbation whose denominator is a unit at w produces a vanishing boundary.

Run with:  python3 demos/02_unit_denominator.py
"""

from koszul_tangent import DeformationScene, boundary, class_is_zero, parse_poly, pi
from koszul_tangent.poly import frac

VARS = ("x1", "x2", "x3")


def P(text):
    return parse_poly(text, VARS)


for den in ("1 + x1", "2 - x2*x3", "5"):
    g1 = frac(P("x2 + 1"), P(den))
    scene = DeformationScene(VARS, 2, [P("x1"), P("x2")], [g1, P("0")], P("x3"))
    b = boundary(pi(scene), scene.extension)
    print(f"g1 = {g1!s:<22} case={b.case_tag:<17} boundary={b.output}  zero={class_is_zero(b.output)}")
