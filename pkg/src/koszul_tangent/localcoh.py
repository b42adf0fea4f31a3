"""Generalized fractions ``[ω | f_1, ..., f_k]`` representing local cohomology classes.

Vanishing is decided at the Ext level: the class is zero iff every
coefficient of ``ω`` lies in the ideal ``(f_1, ..., f_k)``.  For a regular
sequence the transition maps of the colimit are injective, so this agrees with
vanishing in local cohomology; ``exponent > 1`` re-tests after raising the
denominators to that power.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import LocalizationError, PreconditionError, StructuralError
from .forms import SCALAR, DiffForm
from .groebner import Ideal, ideal_member
from .koszul import permutation_of, permute_comparison
from .poly import Frac, Poly, numerator_denominator


@dataclass(frozen=True, eq=False)
class LocalCohClass:
    point: str
    denominators: tuple
    numerator: DiffForm
    localized_at: Ideal | None = field(default=None, repr=False)

    def __post_init__(self):
        dens = tuple(self.denominators)
        object.__setattr__(self, "denominators", dens)
        if not dens:
            raise PreconditionError("a class needs at least one denominator")
        variables = dens[0].variables
        if any(f.variables != variables for f in dens):
            raise StructuralError("denominators over different variable lists")
        if self.numerator.variables != variables:
            raise StructuralError("numerator and denominators over different variable lists")
        if self.numerator.kind != SCALAR:
            raise PreconditionError("numerator must have Poly or Frac coefficients")
        if self.localized_at is not None:
            for den in fraction_denominators(self.numerator):
                if ideal_member(den, self.localized_at, cofactors=False).in_ideal:
                    raise LocalizationError(
                        f"denominator {den} lies in the prime {self.localized_at}; "
                        f"it is not invertible at {self.point}"
                    )

    @property
    def variables(self):
        return self.denominators[0].variables

    @property
    def codimension(self) -> int:
        return len(self.denominators)

    @classmethod
    def zero(cls, point, denominators, degree):
        return cls(point, tuple(denominators), DiffForm.zero(denominators[0].variables, degree))

    def with_numerator(self, numerator: DiffForm) -> "LocalCohClass":
        return LocalCohClass(self.point, self.denominators, numerator, self.localized_at)

    def __neg__(self):
        return self.with_numerator(-self.numerator)

    def __add__(self, other):
        return add_classes(self, other)

    def __sub__(self, other):
        return add_classes(self, -other)

    def __str__(self):
        return f"[ {self.numerator} | {', '.join(str(f) for f in self.denominators)} ] @ {self.point}"

    def __repr__(self):
        return f"LocalCohClass({str(self)!r})"


def fraction_denominators(w: DiffForm) -> list[Poly]:
    """Distinct denominators of Frac coefficients, in order of first appearance."""
    out = []
    for key in sorted(w.terms):
        c = w.terms[key]
        if isinstance(c, Frac) and all(c.den != q for q in out):
            out.append(c.den)
    return out


def _ideal(c: LocalCohClass, exponent: int = 1) -> Ideal:
    return Ideal([f ** exponent for f in c.denominators])


def class_is_zero(c: LocalCohClass, exponent: int = 1) -> bool:
    """True iff every numerator coefficient lies in the denominator ideal.

    With ``exponent = N`` the class is rewritten as
    ``[(f_1...f_k)^(N-1) ω | f_1^N, ..., f_k^N]`` before testing.
    """
    if exponent < 1:
        raise PreconditionError("exponent must be positive")
    for key in sorted(c.numerator.terms):
        coeff = c.numerator.terms[key]
        if isinstance(coeff, Frac):
            raise PreconditionError(
                f"coefficient {coeff} is a fraction; clear it with rewrite_denominator "
                "or clear_denominators first"
            )
    ideal = _ideal(c, exponent)
    lift = Poly.one(c.variables)
    for f in c.denominators:
        lift = lift * f ** (exponent - 1)
    return all(
        ideal_member(lift * coeff, ideal, cofactors=False).in_ideal
        for coeff in c.numerator.terms.values()
    )


def clear_denominators(c: LocalCohClass) -> tuple[LocalCohClass, Poly]:
    """Multiply the numerator by the product of its fraction denominators.

    The denominators must be units at the class's point (checked against
    ``localized_at``), so the cleared class vanishes iff the original does.
    Returns the cleared class and the unit used.
    """
    dens = fraction_denominators(c.numerator)
    unit = Poly.one(c.variables)
    if not dens:
        return c, unit
    if c.localized_at is None:
        raise PreconditionError("clearing denominators needs the localizing prime")
    for den in dens:
        unit = unit * den

    def clear(coeff):
        num, den = numerator_denominator(coeff)
        return num * unit.exact_div(den) if isinstance(coeff, Frac) else coeff * unit

    return c.with_numerator(c.numerator.map_coefficients(clear, SCALAR)), unit


def _require_same_support(a: LocalCohClass, b: LocalCohClass):
    if a.point != b.point or a.denominators != b.denominators:
        raise PreconditionError(
            f"classes over different denominators ({a.point}: {a.denominators} vs "
            f"{b.point}: {b.denominators}); permute or rewrite first"
        )


def class_equal(a: LocalCohClass, b: LocalCohClass) -> bool:
    _require_same_support(a, b)
    return class_is_zero(a.with_numerator(a.numerator - b.numerator))


def permute_denominators(c: LocalCohClass, perm: Sequence[int]) -> LocalCohClass:
    """Reorder denominators as ``new[k] = old[perm[k]]``; the numerator picks up the sign.

    The sign is the determinant of the degree-1 comparison map between the
    two Koszul complexes.
    """
    perm = list(perm)
    if sorted(perm) != list(range(c.codimension)):
        raise PreconditionError(f"{perm} is not a permutation of {c.codimension} slots")
    new = tuple(c.denominators[j] for j in perm)
    det = permute_comparison(c.denominators, new).det_A1
    return LocalCohClass(c.point, new, c.numerator * det, c.localized_at)


def reorder_to(c: LocalCohClass, target: Sequence[Poly]) -> LocalCohClass:
    """Permute ``c``'s denominators into the order of ``target``."""
    perm = permutation_of(c.denominators, tuple(target))
    return permute_denominators(c, perm)


class FormalSum:
    """Element of a direct sum over points: one summand per (point, denominators)."""

    def __init__(self, summands=()):
        self.summands: list[LocalCohClass] = []
        for s in summands:
            self._absorb(s)

    def _absorb(self, c: LocalCohClass):
        for k, s in enumerate(self.summands):
            if s.point == c.point and s.denominators == c.denominators:
                self.summands[k] = s.with_numerator(s.numerator + c.numerator)
                return
        self.summands.append(c)

    def __add__(self, other):
        out = FormalSum(self.summands)
        for s in other.summands if isinstance(other, FormalSum) else [other]:
            out._absorb(s)
        return out

    __radd__ = __add__

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def points(self):
        return [s.point for s in self.summands]

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        nonzero = lambda fs: [s for s in fs.summands if s.numerator]  # noqa: E731
        mine, theirs = nonzero(self), nonzero(other)
        if len(mine) != len(theirs):
            return False
        for s in mine:
            match = [t for t in theirs if t.point == s.point and t.denominators == s.denominators]
            if len(match) != 1 or match[0].numerator != s.numerator:
                return False
        return True

    __hash__ = None

    def __str__(self):
        return " + ".join(str(s) for s in self.summands) if self.summands else "0"


def add_classes(a, b):
    """Add numerators over the same point and denominators, else form a direct sum."""
    if isinstance(a, FormalSum):
        return a + b
    if isinstance(a, LocalCohClass) and isinstance(b, LocalCohClass):
        if a.point == b.point and a.denominators == b.denominators:
            return a.with_numerator(a.numerator + b.numerator)
    return FormalSum([a]) + b
