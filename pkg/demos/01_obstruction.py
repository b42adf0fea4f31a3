"""Walk through a deformation whose tangent class does not extend across the boundary.

Run with:  python3 demos/01_obstruction.py
"""

from koszul_tangent import DeformationScene, boundary, class_is_zero, parse_poly, pi
from koszul_tangent.poly import frac

VARS = ("x1", "x2", "x3")


def P(text):
    return parse_poly(text, VARS)


# Y is cut out by (x1, x2) near the point y; the first equation is perturbed by
# 1/x3, which has a pole along the extension divisor x3 = 0.
scene = DeformationScene(VARS, 2, [P("x1"), P("x2")], [frac(P("1"), P("x3")), P("0")], P("x3"))
print("lifted sequence:", ", ".join(str(h) for h in scene.lifted_sequence()))

c = pi(scene)
print("tangent class pi(Y'):", c)

b = boundary(c, scene.extension)
print(f"boundary at w [{b.case_tag}]:", b.output)
print("boundary vanishes:", class_is_zero(b.output))
print("the pole 1/x3 cannot be absorbed, so this Y' alone is not a Milnor cycle.")
