"""Dual numbers over polynomials: ``base + eps*eps_part`` with ``eps**2 == 0``."""

from __future__ import annotations

from numbers import Rational

from .errors import StructuralError
from .poly import Frac, Poly, parse_poly

EPS = "eps"


class DualPoly:
    """``base + eps*eps``.  Components are :class:`Poly`, or :class:`Frac` where we localize."""

    __slots__ = ("base", "eps")

    def __init__(self, base, eps=None):
        if eps is None:
            eps = Poly.zero(base.variables)
        if base.variables != eps.variables:
            raise StructuralError("base and eps parts over different variable lists")
        self.base = base
        self.eps = eps

    @property
    def variables(self):
        return self.base.variables

    @classmethod
    def epsilon(cls, variables):
        return cls(Poly.zero(variables), Poly.one(variables))

    def _coerce(self, other):
        if isinstance(other, DualPoly):
            if other.variables != self.variables:
                raise StructuralError(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (Poly, Frac)):
            if other.variables != self.variables:
                raise StructuralError("variable lists differ")
            return DualPoly(other)
        if isinstance(other, (int, Rational)):
            return DualPoly(Poly.const(self.variables, other))
        return None

    def __bool__(self):
        return bool(self.base) or bool(self.eps)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return DualPoly(self.base + other.base, self.eps + other.eps)

    __radd__ = __add__

    def __neg__(self):
        return DualPoly(-self.base, -self.eps)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return DualPoly(self.base - other.base, self.eps - other.eps)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # (a + eps b)(c + eps d) = ac + eps (ad + bc)
        return DualPoly(
            self.base * other.base, self.base * other.eps + self.eps * other.base
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.base == other.base and self.eps == other.eps

    __hash__ = None

    def __str__(self):
        if not self.eps:
            return str(self.base)
        if not self.base:
            return f"eps*({self.eps})"
        return f"{self.base} + eps*({self.eps})"

    def __repr__(self):
        return f"DualPoly({str(self)!r})"


def dual(base, eps=None) -> DualPoly:
    return DualPoly(base, eps)


def set_eps_zero(v: DualPoly):
    """The projection ``eps -> 0``."""
    return v.base


def parse_dual(text: str, variables) -> DualPoly:
    """Parse text such as ``"x1 + eps*(x2)"``; ``eps`` is nilpotent of order 2."""
    variables = tuple(variables)
    if EPS in variables:
        raise StructuralError(f"{EPS!r} is reserved for the dual number")
    ext = variables + (EPS,)
    p = parse_poly(text, ext)
    parts = [dict(), dict()]
    for e, c in p.terms.items():
        if e[-1] < 2:
            parts[e[-1]][e[:-1]] = c
    return DualPoly(Poly._raw(variables, parts[0]), Poly._raw(variables, parts[1]))
