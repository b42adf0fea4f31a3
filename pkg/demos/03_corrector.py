"""Build the swapped corrector Z' for a case-2 deformation and certify the Milnor sum.

Run with:  python3 demos/03_corrector.py
"""

from koszul_tangent import DeformationScene, classify_case, correct, parse_poly, verify_milnor_cycle
from koszul_tangent.poly import frac

VARS = ("x1", "x2", "x3", "x4")


def P(text):
    return parse_poly(text, VARS)


f = [P("x1"), P("x2"), P("x3")]
for a in ("1", "x1", "x2 + 3"):
    scene = DeformationScene(VARS, 3, f, [frac(P(a), P("x4")), P("0"), P("0")], P("x4"))
    verdict = classify_case(scene)
    result = correct(scene)
    lifted = ", ".join(str(h) for h in result.corrector_scene.lifted_sequence())
    print(f"a = {a}")
    print(f"  case {verdict.case}: {verdict.decomposition}")
    print(f"  Z' = ({lifted})  extended along {result.corrector_scene.extension}")
    for part in result.certificate.parts:
        print(f"  boundary part: {part.output}")
    print(f"  sum: {result.certificate.output}  antisymmetric={result.antisymmetric}")
    print(f"  Milnor cycle: {verify_milnor_cycle([scene, result.corrector_scene])}")
