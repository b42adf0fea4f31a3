import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from koszul_tangent.poly import Poly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

VARS3 = ("x1", "x2", "x3")
VARS4 = ("x1", "x2", "x3", "x4")

_ACCEPTANCE = []


def record_criterion(number, title, ok, detail=""):
    _ACCEPTANCE.append((number, title, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number}: {status}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


def polys(variables=VARS3, max_degree=4, max_terms=5, coeffs=(-5, 5)):
    """Hypothesis strategy for small polynomials over ``variables``."""
    n = len(variables)
    exponent = st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda e: sum(e) <= max_degree)
    coefficient = st.integers(*coeffs).filter(bool)
    return st.dictionaries(exponent, coefficient, max_size=max_terms).map(
        lambda terms: Poly(variables, terms)
    )


def random_poly(rng: random.Random, variables, max_degree=3, max_terms=4, lo=-4, hi=4):
    """Seeded random polynomial for the fixed-count suites."""
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            exp[rng.randrange(n)] += 1
        c = rng.randint(lo, hi)
        if c:
            terms[tuple(exp)] = terms.get(tuple(exp), 0) + Fraction(c)
    return Poly(variables, terms)


def to_sympy(p: Poly):
    syms = sympy.symbols(p.variables)
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, exp)])
         for exp, c in p.terms.items()),
        sympy.Integer(0),
    )


def from_sympy(expr, variables):
    poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(variables))
    return Poly(variables, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


@pytest.fixture
def rng():
    return random.Random(20261016)
