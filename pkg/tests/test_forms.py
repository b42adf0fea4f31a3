import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from conftest import VARS3, polys
from koszul_tangent.dual import DualPoly, parse_dual
from koszul_tangent.errors import PreconditionError, StructuralError
from koszul_tangent.forms import DUAL, DiffForm, _merge_sign, contract_eps, d, wedge
from koszul_tangent.poly import Poly, frac, parse_poly


def P(text):
    return parse_poly(text, VARS3)


def dx(i, c=None):
    return DiffForm.dx(VARS3, i, c)


def forms(degree):
    keys = list(itertools.combinations(range(3), degree))
    return st.dictionaries(st.sampled_from(keys), polys(max_degree=2, max_terms=2), max_size=3).map(
        lambda t: DiffForm(VARS3, degree, t)
    )


class TestDerivative:
    def test_leibniz_example(self):
        assert d(P("x1*x2")) == dx("x1", P("x2")) + dx("x2", P("x1"))

    def test_constant(self):
        assert not d(P("3/2"))

    def test_dual(self):
        w = d(parse_dual("x1 + eps*x2", VARS3))
        assert w.kind == DUAL
        assert w.coefficient("x1") == DualPoly(P("1"))
        assert w.coefficient("x2") == DualPoly(P("0"), P("1"))
        assert w.coefficient("eps") == DualPoly(P("x2"))

    def test_frac(self):
        assert d(frac(P("1"), P("x3"))) == dx("x3", frac(P("-1"), P("x3^2")))

    @given(polys(max_degree=4))
    def test_d_squared(self, f):
        assert not d(d(f))

    @given(forms(1))
    def test_d_squared_on_forms(self, w):
        assert not d(d(w))

    @given(polys(max_degree=4), polys(max_degree=4))
    def test_leibniz(self, f, g):
        assert d(f * g) == d(g).scale(f) + d(f).scale(g)


class TestWedge:
    def test_square_vanishes(self):
        assert not wedge(dx("x1"), dx("x1"))

    def test_antisymmetry(self):
        assert wedge(dx("x1"), dx("x2")) == -wedge(dx("x2"), dx("x1"))

    def test_coefficient(self):
        w = wedge(dx("x2", P("x1")), dx("x3"))
        assert w.terms == {(1, 2): P("x1")}
        assert str(w) == "x1 * dx2^dx3"

    @pytest.mark.parametrize("a", list(itertools.combinations(range(5), 2)))
    @pytest.mark.parametrize("b", list(itertools.combinations(range(5), 2)))
    def test_merge_sign_matches_permutation_parity(self, a, b):
        if set(a) & set(b):
            return
        word = list(a + b)
        perm = Permutation([sorted(word).index(x) for x in word])
        assert _merge_sign(a, b) == perm.signature()

    @given(st.integers(0, 2).flatmap(lambda p: forms(p)), st.integers(0, 2).flatmap(lambda q: forms(q)))
    def test_graded_commutativity(self, a, b):
        sign = -1 if (a.degree * b.degree) % 2 else 1
        assert wedge(a, b) == wedge(b, a) * sign

    @given(forms(1), forms(1), forms(1))
    def test_associativity(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_mixed_variables_rejected(self):
        other = DiffForm.dx(("x1", "x2"), "x1")
        with pytest.raises(StructuralError):
            wedge(dx("x1"), other)


class TestContraction:
    def test_first_slot(self):
        # (x2 + eps*x3) deps ^ dx1 = -(x2 + eps*x3) dx1 ^ deps in canonical order
        c = parse_dual("x2 + eps*x3", VARS3)
        w = wedge(DiffForm.deps(VARS3).scale(c), DiffForm.dx(VARS3, "x1", DualPoly(P("1"))))
        assert contract_eps(w) == dx("x1", P("x2"))

    def test_no_deps(self):
        w = wedge(DiffForm.dx(VARS3, "x1", DualPoly(P("1"))), DiffForm.dx(VARS3, "x2", DualPoly(P("1"))))
        assert not contract_eps(w)

    def test_eps_dies(self):
        w = DiffForm.deps(VARS3).scale(parse_dual("eps*x1", VARS3))
        assert not contract_eps(w)

    def test_requires_dual(self):
        with pytest.raises(PreconditionError):
            contract_eps(dx("x1"))

    @given(polys(max_degree=2), polys(max_degree=2), polys(max_degree=2))
    def test_kills_eps_multiples(self, a, b, c):
        w = wedge(d(DualPoly(a, b)), d(DualPoly(c, a)))
        eps = DualPoly(Poly.zero(VARS3), Poly.one(VARS3))
        assert not contract_eps(w.scale(eps))


def test_scalar_forms_reject_deps():
    with pytest.raises(StructuralError):
        DiffForm(VARS3, 1, {(3,): P("1")})


def test_rendering():
    assert str(dx("x1", P("x2")) + dx("x2")) == "x2 * dx1 + dx2"
    assert str(dx("x2", frac(P("1"), P("x3")))) == "(1/x3) * dx2"
