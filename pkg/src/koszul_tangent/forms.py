"""Kähler differential forms over Q with the universal derivation ``d``.

A form is a map from strictly increasing index tuples (``dx_i1 ^ ... ^ dx_iq``)
to coefficients.  Over dual numbers one extra generator ``deps`` is available;
it carries index ``len(variables)`` so it always sorts last.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .dual import DualPoly
from .errors import PreconditionError, StructuralError
from .poly import Frac, Poly

SCALAR = "scalar"
DUAL = "dual"


def coefficient_kind(c) -> str:
    if isinstance(c, DualPoly):
        return DUAL
    if isinstance(c, (Poly, Frac)):
        return SCALAR
    raise TypeError(f"unsupported form coefficient {c!r}")


def _merge_sign(a: tuple, b: tuple) -> int:
    inversions = sum(1 for i in a for j in b if i > j)
    return -1 if inversions % 2 else 1


class DiffForm:
    __slots__ = ("variables", "degree", "terms", "kind")

    def __init__(self, variables, degree: int, terms=None, kind: str | None = None):
        variables = tuple(variables)
        clean = {}
        kinds = set()
        n = len(variables)
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise StructuralError(f"index tuple {key} does not have length {degree}")
            if any(b <= a for a, b in zip(key, key[1:])):
                raise StructuralError(f"index tuple {key} is not strictly increasing")
            if any(i < 0 or i > n for i in key):
                raise StructuralError(f"index out of range in {key}")
            if c.variables != variables:
                raise StructuralError("coefficient over a different variable list")
            kinds.add(coefficient_kind(c))
            if c:
                clean[key] = c
        if len(kinds) > 1:
            raise StructuralError("mixed dual and non-dual coefficients")
        inferred = kinds.pop() if kinds else None
        if kind is None:
            kind = inferred or SCALAR
        elif inferred and inferred != kind:
            raise StructuralError(f"coefficients are {inferred}, form declared {kind}")
        if kind == SCALAR and any(n in key for key in clean):
            raise StructuralError("deps requires dual-number coefficients")
        self.variables = variables
        self.degree = degree
        self.terms = clean
        self.kind = kind

    @classmethod
    def _raw(cls, variables, degree, terms, kind):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.degree = degree
        obj.terms = terms
        obj.kind = kind
        return obj

    @classmethod
    def zero(cls, variables, degree: int, kind: str = SCALAR):
        return cls._raw(tuple(variables), degree, {}, kind)

    @classmethod
    def function(cls, c):
        """A coefficient viewed as a 0-form."""
        return cls(c.variables, 0, {(): c})

    @classmethod
    def dx(cls, variables, name_or_index, coefficient=None):
        variables = tuple(variables)
        i = variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        c = coefficient if coefficient is not None else Poly.one(variables)
        return cls(variables, 1, {(i,): c})

    @classmethod
    def deps(cls, variables):
        variables = tuple(variables)
        return cls(variables, 1, {(len(variables),): DualPoly(Poly.one(variables))})

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, DiffForm):
            raise TypeError(f"expected a DiffForm, got {type(other).__name__}")
        if other.variables != self.variables:
            raise StructuralError("forms over different variable lists")

    def _result_kind(self, other):
        return DUAL if DUAL in (self.kind, other.kind) else SCALAR

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree and self.terms and other.terms:
            raise StructuralError("cannot add forms of different degrees")
        degree = self.degree if self.terms else other.degree
        kind = self._result_kind(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms[key] + c if key in terms else c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        if kind == DUAL:
            terms = {k: v if isinstance(v, DualPoly) else DualPoly(v) for k, v in terms.items()}
        return DiffForm._raw(self.variables, degree, terms, kind)

    def __neg__(self):
        return DiffForm._raw(
            self.variables, self.degree, {k: -c for k, c in self.terms.items()}, self.kind
        )

    def __sub__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        """Multiply every coefficient by a function ``c`` (or a rational)."""
        if isinstance(c, (int, Rational)):
            c = Fraction(c)
            terms = {k: v * c for k, v in self.terms.items()} if c else {}
            return DiffForm._raw(self.variables, self.degree, terms, self.kind)
        if c.variables != self.variables:
            raise StructuralError("scalar over a different variable list")
        kind = DUAL if DUAL in (self.kind, coefficient_kind(c)) else SCALAR
        terms = {}
        for k, v in self.terms.items():
            prod = c * v
            if kind == DUAL and not isinstance(prod, DualPoly):
                prod = DualPoly(prod)
            if prod:
                terms[k] = prod
        return DiffForm._raw(self.variables, self.degree, terms, kind)

    def __mul__(self, c):
        if isinstance(c, DiffForm):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        if other.variables != self.variables:
            return False
        if not self.terms and not other.terms:
            return True
        if self.degree != other.degree or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def coefficient(self, *names):
        """Coefficient of ``dx_names[0] ^ ...`` (zero if absent); names given in increasing slot order."""
        key = tuple(self._index(n) for n in names)
        return self.terms.get(key)

    def _index(self, name):
        if isinstance(name, int):
            return name
        if name == "eps":
            return len(self.variables)
        return self.variables.index(name)

    def map_coefficients(self, fn, kind=None):
        return DiffForm(
            self.variables, self.degree, {k: fn(v) for k, v in self.terms.items()}, kind
        )

    def _slot_name(self, i):
        return "deps" if i == len(self.variables) else f"d{self.variables[i]}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            wedge_str = "^".join(self._slot_name(i) for i in key)
            text = str(c)
            if not wedge_str:
                parts.append(text if " " not in text else f"({text})")
            elif text == "1":
                parts.append(wedge_str)
            elif text == "-1":
                parts.append(f"-{wedge_str}")
            else:
                if " " in text or "/" in text:
                    text = f"({text})"
                parts.append(f"{text} * {wedge_str}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffForm({str(self)!r}, degree={self.degree})"


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    a._check(b)
    kind = a._result_kind(b)
    terms: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            if set(ka) & set(kb):
                continue
            key = tuple(sorted(ka + kb))
            prod = ca * cb
            if _merge_sign(ka, kb) < 0:
                prod = -prod
            terms[key] = terms[key] + prod if key in terms else prod
    terms = {k: v for k, v in terms.items() if v}
    if kind == DUAL:
        terms = {k: v if isinstance(v, DualPoly) else DualPoly(v) for k, v in terms.items()}
    return DiffForm._raw(a.variables, a.degree + b.degree, terms, kind)


def wedge_all(forms, variables=None, kind=SCALAR) -> DiffForm:
    forms = list(forms)
    if not forms:
        one = Poly.one(variables)
        return DiffForm(variables, 0, {(): DualPoly(one) if kind == DUAL else one})
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def d(x) -> DiffForm:
    """Universal derivation.  Accepts Poly, Frac, DualPoly or a DiffForm."""
    if isinstance(x, DiffForm):
        return _d_form(x)
    if isinstance(x, (Poly, Frac)):
        n = len(x.variables)
        return DiffForm(x.variables, 1, {(i,): x.diff(i) for i in range(n)})
    if isinstance(x, DualPoly):
        n = len(x.variables)
        terms = {}
        for i in range(n):
            # d(a + eps b) = da + eps db + b deps
            terms[(i,)] = DualPoly(x.base.diff(i), x.eps.diff(i))
        terms[(n,)] = DualPoly(x.eps)
        return DiffForm(x.variables, 1, terms, DUAL)
    raise TypeError(f"cannot differentiate {x!r}; wrap constants in Poly.const")


def _d_form(w: DiffForm) -> DiffForm:
    out = DiffForm.zero(w.variables, w.degree + 1, w.kind)
    for key, c in w.terms.items():
        basis = DiffForm._raw(
            w.variables,
            w.degree,
            {key: DualPoly(Poly.one(w.variables)) if w.kind == DUAL else Poly.one(w.variables)},
            w.kind,
        )
        out = out + wedge(d(c), basis)
    return out


def contract_eps(w: DiffForm) -> DiffForm:
    """Interior product with d/deps followed by eps = 0.

    ``deps`` sits in the last slot, so removing it from slot j (1-based) of a
    degree-q monomial carries the sign (-1)**(j-1) with j = q.
    """
    if w.kind != DUAL:
        raise PreconditionError("contract_eps needs a form with dual-number coefficients")
    n = len(w.variables)
    terms = {}
    for key, c in w.terms.items():
        if not key or key[-1] != n:
            continue
        j = len(key)
        value = c.base if (j - 1) % 2 == 0 else -c.base
        if value:
            terms[key[:-1]] = value
    return DiffForm._raw(w.variables, max(w.degree - 1, 0), terms, SCALAR)
