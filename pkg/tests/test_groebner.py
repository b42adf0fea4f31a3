import threading
import warnings

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import VARS3, from_sympy, polys, to_sympy
from koszul_tangent.errors import GroebnerLimitError, PreconditionError
from koszul_tangent.groebner import (
    Ideal,
    RegularityWarning,
    check_regular,
    gb_limit,
    groebner,
    ideal_member,
    ideal_quotient,
    is_unit_mod,
    normal_form,
)
from koszul_tangent.poly import Poly, parse_poly


def P(text):
    return parse_poly(text, VARS3)


def sympy_basis(gens):
    syms = sympy.symbols(VARS3)
    gb = sympy.groebner([to_sympy(g) for g in gens], *syms, order="grevlex", domain=sympy.QQ)
    return sorted((from_sympy(g, VARS3) for g in gb.exprs), key=str)


class TestGroebner:
    def test_already_reduced(self):
        assert groebner([P("x1"), P("x2")]) == [P("x1"), P("x2")]

    def test_unit_ideal(self):
        assert groebner([P("1")]) == [P("1")]
        assert groebner([P("x1"), P("x1 + 1")]) == [P("1")]

    def test_empty(self):
        assert groebner([]) == []

    def test_example_contains_x2(self):
        basis = groebner([P("x1^2"), P("x1*x2 - x2")])
        assert P("x2") in basis

    def test_example_cofactors(self):
        # division oracle: x2 = x2 * x1^2 + (-x1 - 1) * (x1*x2 - x2)
        gens = [P("x1^2"), P("x1*x2 - x2")]
        m = ideal_member(P("x2"), Ideal(gens))
        assert m.in_ideal
        assert m.cofactors[0] * gens[0] + m.cofactors[1] * gens[1] == P("x2")
        assert P("x2") * gens[0] + P("-x1 - 1") * gens[1] == P("x2")

    @settings(max_examples=40)
    @given(st.lists(polys(max_degree=3, max_terms=3), min_size=1, max_size=3))
    def test_matches_sympy(self, gens):
        gens = [g for g in gens if g]
        if not gens:
            return
        mine = sorted(groebner(gens), key=str)
        assert mine == sympy_basis(gens)

    @settings(max_examples=30)
    @given(st.lists(polys(max_degree=3, max_terms=3), min_size=1, max_size=3))
    def test_idempotent_and_sound(self, gens):
        gens = [g for g in gens if g]
        if not gens:
            return
        basis = groebner(gens)
        assert groebner(basis) == basis
        for g in gens:
            assert normal_form(g, basis) == 0

    def test_limit(self):
        gens = [P("x1^3 - x2*x3"), P("x2^3 - x1*x3 + 1"), P("x3^3 - x1*x2")]
        with pytest.raises(GroebnerLimitError):
            groebner(gens, limit=2)

    def test_env_limit(self, monkeypatch):
        monkeypatch.setenv("KOSZUL_GB_LIMIT", "7")
        assert gb_limit() == 7
        monkeypatch.setenv("KOSZUL_GB_LIMIT", "lots")
        with pytest.raises(PreconditionError):
            gb_limit()
        monkeypatch.delenv("KOSZUL_GB_LIMIT")
        assert gb_limit() == 512


class TestMembership:
    def test_examples(self):
        m = ideal_member(P("x1*x2"), Ideal([P("x1")]))
        assert m.in_ideal and m.cofactors == [P("x2")] and m.remainder == 0
        m = ideal_member(P("x3"), Ideal([P("x1"), P("x2")]))
        assert not m.in_ideal and m.remainder == P("x3")
        m = ideal_member(P("x1 + x3"), Ideal([P("x1"), P("x2"), P("x3")]))
        assert m.in_ideal and m.cofactors == [P("1"), P("0"), P("1")]

    def test_contains_operator(self):
        assert P("x1*x3 + x2^2") in Ideal([P("x1"), P("x2")])

    @given(st.lists(polys(max_degree=2, max_terms=3), min_size=1, max_size=3),
           st.lists(polys(max_degree=2, max_terms=3), min_size=3, max_size=3),
           polys(max_degree=2, max_terms=2))
    def test_reconstruction(self, gens, mult, extra):
        gens = [g for g in gens if g] or [P("x1")]
        ideal = Ideal(gens)
        f = sum((q * g for q, g in zip(mult, gens)), Poly.zero(VARS3)) + extra
        m = ideal_member(f, ideal)
        total = sum((q * g for q, g in zip(m.cofactors, gens)), Poly.zero(VARS3))
        assert total + m.remainder == f
        assert m.in_ideal == (not m.remainder)

    def test_is_unit_mod(self):
        maximal = Ideal([P("x1"), P("x2"), P("x3")])
        assert is_unit_mod(P("1 + x1"), maximal)
        assert not is_unit_mod(P("x3"), maximal)
        assert not is_unit_mod(P("x3 + 2"), Ideal([P("x1"), P("x2")]))
        with pytest.raises(PreconditionError):
            is_unit_mod(P("x1"), Ideal([P("1")]))

    def test_quotient(self):
        # (x1*x2) : x2 = (x1)
        q = ideal_quotient(Ideal([P("x1*x2")]), P("x2"))
        assert [str(g) for g in groebner(q.generators)] == ["x1"]

    def test_concurrent_cache(self):
        ideal = Ideal([P("x1^2 - x2"), P("x2^2 - x3"), P("x1*x3 - 1")])
        results = []

        def work():
            results.append(ideal_member(P("x3^3 - x1*x2"), ideal).in_ideal)

        threads = [threading.Thread(target=work) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(set(results)) == 1
        assert ideal.cached_groebner is not None


class TestRegularity:
    def test_variables(self):
        assert check_regular([P("x1"), P("x2"), P("x3")]).ok

    def test_zero_divisor(self):
        r = check_regular([P("x1"), P("x1*x2")])
        assert not r.ok
        assert r.detail.startswith("stage 2")

    def test_unit(self):
        r = check_regular([P("x1"), P("1 + x1")])
        assert not r.ok
        assert "unit ideal" in r.detail and r.detail.startswith("stage 2")

    def test_nonlinear_regular(self):
        assert check_regular([P("x1^2 - x2"), P("x2*x3 - 1")]).ok

    def test_unverified_on_limit(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            r = check_regular([P("x1^2 + x2*x3"), P("x2^2 + x1*x3"), P("x3^2 + x1*x2")], limit=1)
        assert r.ok and not r.verified
        assert any(issubclass(w.category, RegularityWarning) for w in caught)
