import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import VARS3, VARS4, polys
from koszul_tangent.cousin import boundary
from koszul_tangent.errors import LocalizationError, PreconditionError, UnsupportedCaseError
from koszul_tangent.forms import DiffForm
from koszul_tangent.localcoh import add_classes, class_is_zero
from koszul_tangent.poly import Poly, frac, parse_poly
from koszul_tangent.tangent import (
    DeformationScene,
    classify_case,
    correct,
    corrector_scene,
    generator_diagnostic,
    pi,
    pi_sum,
    split_scene,
    verify_milnor_cycle,
)


def P(text, variables=VARS3):
    return parse_poly(text, variables)


def scene(g1, g2="0", f=("x1", "x2"), ext="x3", variables=VARS3):
    def val(g):
        return frac(P(g[0], variables), P(g[1], variables)) if isinstance(g, tuple) else P(g, variables)

    gs = [val(g1)] + [val(g2)] + [P("0", variables)] * (len(f) - 2)
    return DeformationScene(variables, len(f), [P(x, variables) for x in f], gs[: len(f)],
                            P(ext, variables))


class TestPi:
    def test_example(self):
        c = pi(scene(("1", "x3")))
        assert str(c) == "[ (1/x3) * dx2 | x1, x2 ] @ y"

    def test_trivial(self):
        assert not pi(scene("0")).numerator

    def test_p1(self):
        s = DeformationScene(("x1", "x2"), 1, [P("x1", ("x1", "x2"))], [P("x2", ("x1", "x2"))],
                             P("x2", ("x1", "x2")))
        c = pi(s)
        assert c.numerator.degree == 0
        assert c.numerator == DiffForm.function(P("x2", ("x1", "x2")))

    def test_methods_agree(self):
        s = scene(("x2 + 3", "x3"), "x1*x3")
        assert pi(s, "oracle").numerator == pi(s).numerator == pi(s, "matrix").numerator

    @given(polys(max_degree=2), polys(max_degree=2), polys(max_degree=2))
    def test_linearity(self, g, h, k):
        f = [P("x1 + x3^2"), P("x2")]

        def at(gs):
            return pi(DeformationScene(VARS3, 2, f, gs, P("x3")))

        zero = Poly.zero(VARS3)
        whole = at([g + h, k])
        parts = add_classes(add_classes(at([g, zero]), at([h, zero])), at([zero, k]))
        assert whole.numerator == parts.numerator
        s = DeformationScene(VARS3, 2, f, [g + h, k], P("x3"))
        assert pi_sum(s).numerator == whole.numerator


class TestSceneInvariants:
    def test_lengths(self):
        with pytest.raises(PreconditionError):
            DeformationScene(VARS3, 2, [P("x1")], [P("0"), P("0")], P("x3"))

    def test_denominator_in_prime(self):
        with pytest.raises(LocalizationError):
            scene(("1", "x1 + x2"))

    def test_advisories(self):
        assert scene("0").advisories() == []
        bad = scene("0", f=("x1", "x1*x2"))
        assert any("not a regular sequence" in a for a in bad.advisories())
        assert any("f + extension" in a for a in scene("0", ext="x1 + 1").advisories())

    def test_split(self):
        s = scene(("1", "x3"), "x1")
        parts = split_scene(s)
        assert len(parts) == 2
        assert [len(p.nonzero_perturbations()) for p in parts] == [1, 1]


class TestClassify:
    def test_unit_b(self):
        assert classify_case(scene("x2")).case == 1

    def test_b_is_extension(self):
        v = classify_case(scene(("1", "x3")))
        assert v.case == 2 and v.decomposition.unit == 1

    def test_b_unit_mod_maximal(self):
        assert classify_case(scene(("1", "1 + x1"))).case == 1

    def test_several_perturbations(self):
        with pytest.raises(UnsupportedCaseError):
            classify_case(scene(("1", "x3"), ("1", "x3")))

    def test_perturbation_not_first(self):
        with pytest.raises(UnsupportedCaseError):
            classify_case(scene("0", ("1", "x3")))


class TestCorrect:
    def test_example(self):
        r = correct(scene(("1", "x3")))
        assert r.case == 2
        assert r.Z_sequence == (P("x3"), P("x2"))
        assert r.Zprime_perturbation == (frac(P("1"), P("x1")), P("0"))
        assert [str(h) for h in r.corrector_scene.lifted_sequence()] == ["x3 + eps*(1/x1)", "x2"]
        assert r.milnor_member and r.antisymmetric
        assert class_is_zero(r.certificate.output)

    def test_case1_trivial(self):
        r = correct(scene(("x2", "1 + x1")))
        assert r.case == 1 and r.corrector_scene is None
        assert r.milnor_member

    def test_zero_a(self):
        r = correct(scene("0"))
        assert r.case == 1
        assert not r.certificate.output.numerator

    def test_non_constant_cofactor(self):
        with pytest.raises(UnsupportedCaseError) as info:
            correct(scene(("1", "x3^2")))
        assert info.value.decomposition is not None

    def test_corrector_needs_case2(self):
        with pytest.raises(PreconditionError):
            corrector_scene(scene(("1", "1 + x1")))

    def test_unit_rescaling(self):
        r = correct(scene(("x2", "3*x3 + x1")))
        assert r.Zprime_perturbation[0] == frac(P("1/3*x2"), P("x1"))
        assert r.milnor_member and r.antisymmetric

    @settings(max_examples=40)
    @given(
        polys(("x2", "x3"), max_degree=2, max_terms=2),
        polys(("x3",), max_degree=2, max_terms=2),
        st.integers(-3, 3),
        polys(max_degree=2, max_terms=3).filter(bool),
    )
    def test_main_theorem_randomized(self, r1, r2, c, a):
        # triangular regular sequence through a point, b = f_{p+1}
        f1 = P("x1") + r1.embed(VARS3)
        f2 = P("x2") + r2.embed(VARS3)
        ext = P("x3") + c
        assume(a != ext)  # a/b would collapse to 1
        s = DeformationScene(VARS3, 2, [f1, f2], [frac(a, ext), Poly.zero(VARS3)], ext)
        r = correct(s)
        assert r.case == 2
        assert r.milnor_member
        assert r.antisymmetric
        assert verify_milnor_cycle([s, r.corrector_scene])

    @settings(max_examples=15)
    @given(polys(VARS4, max_degree=2, max_terms=3).filter(bool))
    def test_main_theorem_p3(self, a):
        assume(a != P("x4", VARS4))
        s = scene(("1", "x4"), f=("x1", "x2", "x3"), ext="x4", variables=VARS4)
        s = DeformationScene(VARS4, 3, s.f, [frac(a, s.extension)] + list(s.g[1:]), s.extension)
        r = correct(s)
        assert r.milnor_member and r.antisymmetric


class TestMilnor:
    def test_case2_pair(self):
        s = scene(("1", "x3"))
        assert verify_milnor_cycle([s, correct(s).corrector_scene])

    def test_lone_example(self):
        assert not verify_milnor_cycle([scene(("1", "x3"))])

    def test_case1_lone(self):
        assert verify_milnor_cycle([scene(("1", "1 + x1"))])

    def test_mismatched_points(self):
        with pytest.raises(PreconditionError):
            verify_milnor_cycle([scene(("1", "x3")), scene(("1", "x3 + 1"), ext="x3 + 1")])

    def test_split_scene_boundary(self):
        # two perturbations, each handled by linearity
        s = scene(("1", "x3"), ("x1", "x3"))
        lone = boundary(pi(scene(("1", "x3"))), P("x3")).output
        assert not verify_milnor_cycle([s]) and not class_is_zero(lone)


def test_generator_diagnostic():
    s = scene(("1", "x3"))
    out = generator_diagnostic(s, [[P("x1"), P("x2 + x1")], [P("x1 + x2^2"), P("x2")]])
    assert [str(c) for _, c in out] == [
        "[ (1/x3) * dx1 + (1/x3) * dx2 | x1, x1 + x2 ] @ y",
        "[ (1/x3) * dx2 | x2^2 + x1, x2 ] @ y",
    ]
