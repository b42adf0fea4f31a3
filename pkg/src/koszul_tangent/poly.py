"""Sparse multivariate polynomials over Q and fractions of them.

A :class:`Poly` is a map from exponent tuples to nonzero :class:`~fractions.Fraction`
coefficients, tied to an ordered tuple of variable names.  Values are immutable.
:class:`Frac` is an unreduced quotient ``num/den`` used for elements of a
localization; equality is cross-multiplication equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, StructuralError

Exponent = tuple[int, ...]


def grevlex_key(exp: Exponent):
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Poly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise StructuralError(f"repeated variable names in {variables}")
        clean = {}
        n = len(variables)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise StructuralError(f"bad exponent {exp} for variables {variables}")
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.variables = variables
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        c = _as_fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def one(cls, variables):
        return cls.const(variables, 1)

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        try:
            i = variables.index(name)
        except ValueError:
            raise StructuralError(f"unknown variable {name!r}") from None
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def gens(cls, variables):
        return [cls.var(variables, v) for v in variables]

    @classmethod
    def parse(cls, text, variables):
        return parse_poly(text, variables)

    # -- structure --------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise StructuralError(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.variables, other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self, key=grevlex_key):
        """Leading (exponent, coefficient) under the order given by ``key``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def sorted_terms(self, key=grevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = _as_fraction(other)
            if not c:
                return Poly.zero(self.variables)
            return Poly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, exp: Exponent, coeff) -> "Poly":
        """Multiply by the single term ``coeff * x**exp``."""
        if not coeff:
            return Poly.zero(self.variables)
        return Poly._raw(
            self.variables,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()},
        )

    def diff(self, var) -> "Poly":
        """Partial derivative with respect to a variable (index or name)."""
        i = self.variables.index(var) if isinstance(var, str) else var
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly._raw(self.variables, terms)

    def divmod_single(self, divisor: "Poly"):
        """Division by one polynomial: returns (quotient, remainder) in grevlex."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = divisor.leading()
        q = Poly.zero(self.variables)
        r_terms = {}
        p = self
        while p:
            exp, c = p.leading()
            if _divides(lexp, exp):
                m = tuple(a - b for a, b in zip(exp, lexp))
                coeff = c / lc
                q = q + Poly._raw(self.variables, {m: coeff})
                p = p - divisor.mul_term(m, coeff)
            else:
                r_terms[exp] = c
                p = Poly._raw(self.variables, {e: v for e, v in p.terms.items() if e != exp})
        return q, Poly._raw(self.variables, r_terms)

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod_single(divisor)
        if r:
            raise ValueError(f"{divisor} does not divide {self}")
        return q

    def embed(self, variables: Sequence[str]) -> "Poly":
        """Re-express over a variable list containing all of ours."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for i, k in zip(idx, e):
                new[i] = k
            terms[tuple(new)] = c
        return Poly._raw(variables, terms)

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e
            )
            mag = abs(c)
            if not mono:
                body = _format_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_format_coeff(mag)}*{mono}"
            if k == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, {list(self.variables)})"



class Frac:
    """Quotient ``num/den`` of polynomials.  Use :func:`frac` to build one."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if num.variables != den.variables:
            raise StructuralError("numerator and denominator over different variables")
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @property
    def variables(self):
        return self.num.variables

    def __bool__(self):
        return bool(self.num)

    def _parts(self, other):
        if isinstance(other, Frac):
            if other.variables != self.variables:
                raise StructuralError("variable lists differ")
            return other.num, other.den
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise StructuralError("variable lists differ")
            return other, Poly.one(self.variables)
        if isinstance(other, (int, Rational)):
            return Poly.const(self.variables, other), Poly.one(self.variables)
        return None

    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        n, d = parts
        if d == self.den:
            return frac(self.num + n, d)
        if d == 1:
            return frac(self.num + n * self.den, self.den)
        return frac(self.num * d + n * self.den, self.den * d)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den)

    def __sub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self + Frac(-parts[0], parts[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        n, d = parts
        return frac(self.num * n, self.den * d)

    __rmul__ = __mul__

    def diff(self, var):
        """Quotient rule."""
        return frac(self.num.diff(var) * self.den - self.num * self.den.diff(var), self.den * self.den)

    def __eq__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        n, d = parts
        return self.num * d == n * self.den

    __hash__ = None

    def __str__(self):
        num = f"({self.num})" if len(self.num.terms) > 1 else str(self.num)
        den = str(self.den) if _is_bare(self.den) else f"({self.den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Frac({str(self.num)!r}, {str(self.den)!r})"


def _is_bare(p: Poly) -> bool:
    """Single monomial with unit coefficient, printable without parentheses."""
    if len(p.terms) != 1:
        return False
    (exp, c), = p.terms.items()
    return c == 1 and sum(1 for e in exp if e) == 1


def frac(num: Poly, den: Poly):
    """Build ``num/den``; collapses to a :class:`Poly` when ``den`` is a constant."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return Poly.zero(num.variables)
    if den.is_constant():
        return num * (1 / den.constant_value())
    if num == den:
        return Poly.one(num.variables)
    return Frac(num, den)


def numerator_denominator(c):
    """Split a Poly or Frac into (num, den)."""
    if isinstance(c, Frac):
        return c.num, c.den
    return c, Poly.one(c.variables)


# -- text grammar -----------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()])")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            tokens.append(("op", "^" if m.group(3) == "**" else m.group(3), pos))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op_tok = self.take()
            q = self.unary()
            if op_tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant():
                    self.error("division is only allowed by a constant", op_tok)
                if not q:
                    self.error("division by zero", op_tok)
                p = p * (1 / q.constant_value())
        return p

    def unary(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer literal", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Poly.const(self.variables, val)
        if kind == "name":
            if val not in self.variables:
                self.error(f"undeclared variable {val!r}", tok)
            return Poly.var(self.variables, val)
        if tok[:2] == ("op", "("):
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return p
        self.error("expected a number, variable or '('", tok)


def parse_poly(text: str, variables: Iterable[str]) -> Poly:
    """Parse e.g. ``"x1^2*x2 - 3/2*x3"`` over the declared variables."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, variables).parse()
