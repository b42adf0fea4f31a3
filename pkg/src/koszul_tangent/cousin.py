"""The Cousin differential from codimension p to a chosen codimension-(p+1) point w.

A class ``[(a/b) ω | f_1..f_p]`` at y is pushed to w, cut out by
``f_1..f_p, f_{p+1}``, in one of three ways:

``direct``
    Polynomial coefficients: write ``ω = (f_{p+1} ω) / f_{p+1}``; the boundary
    numerator is ``f_{p+1} ω``, which always vanishes.
``unit_denominator``
    ``b`` is a unit at w: same as ``direct`` after clearing ``b``.  The output
    numerator is ``b`` times the boundary; both are zero classes.
``rewritten``
    ``b = sum q_i f_i + u f_{p+1}`` with ``u`` a nonzero constant: the
    ``q_i f_i`` part dies modulo the denominators, ``a/b`` becomes
    ``(a/u)/f_{p+1}``, and the boundary numerator is ``(a/u) ω``.

Other decompositions (higher powers of f_{p+1}, non-constant cofactors) raise
:class:`UnsupportedCaseError` carrying the decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import LocalizationError, PreconditionError, UnsupportedCaseError
from .forms import SCALAR
from .groebner import Ideal, ideal_member
from .koszul import permutation_of, permutation_sign
from .localcoh import FormalSum, LocalCohClass, fraction_denominators, reorder_to
from .poly import Frac, Poly, frac

DIRECT = "direct"
UNIT_DENOMINATOR = "unit_denominator"
REWRITTEN = "rewritten"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``b == sum(cofactors[i] * generators[i])``; ``unit`` is the constant last cofactor, if any."""

    b: Poly
    generators: tuple
    cofactors: tuple
    unit: object = None

    @property
    def last_cofactor(self) -> Poly:
        return self.cofactors[-1]

    def as_dict(self):
        return {
            "b": str(self.b),
            "generators": [str(g) for g in self.generators],
            "cofactors": [str(q) for q in self.cofactors],
            "unit": None if self.unit is None else str(self.unit),
        }

    def __str__(self):
        terms = " + ".join(f"({q})*({g})" for q, g in zip(self.cofactors, self.generators) if q)
        return f"{self.b} = {terms or '0'}"


def decompose(b: Poly, denominators: Sequence[Poly], extension: Poly) -> Decomposition | None:
    """Express ``b`` in ``(f_1..f_p, f_{p+1})`` or return None when ``b`` is outside the ideal.

    The last cofactor is reduced modulo ``(f_1..f_p)`` (the ambiguity left by
    Koszul syzygies), so it is a constant exactly when some decomposition has
    a constant last cofactor.
    """
    dens = tuple(denominators)
    gens = dens + (extension,)
    full = ideal_member(b, Ideal(gens))
    if not full.in_ideal:
        return None
    q = list(full.cofactors)
    shift = ideal_member(q[-1], Ideal(dens))
    q[-1] = shift.remainder
    for i, c in enumerate(shift.cofactors):
        q[i] = q[i] + c * extension
    last = q[-1]
    unit = last.constant_value() if last and last.is_constant() else None
    return Decomposition(b, gens, tuple(q), unit)


@dataclass(frozen=True, eq=False)
class Rewritten:
    cls: LocalCohClass
    case_tag: str
    decomposition: Decomposition | None = None
    denominator: Poly | None = None


def _single_denominator(c: LocalCohClass):
    dens = fraction_denominators(c.numerator)
    if len(dens) > 1:
        raise UnsupportedCaseError(
            "numerator has several fraction denominators "
            f"({', '.join(str(d) for d in dens)}); split it by linearity first"
        )
    return dens[0] if dens else None


def rewrite_denominator(c: LocalCohClass, extension: Poly) -> Rewritten:
    """Rewrite ``c`` at y so its fraction coefficients have denominator ``f_{p+1}``."""
    b = _single_denominator(c)
    if b is None:
        return Rewritten(c, DIRECT)
    if ideal_member(b, Ideal(c.denominators), cofactors=False).in_ideal:
        raise LocalizationError(f"denominator {b} lies in ({', '.join(map(str, c.denominators))})")
    dec = decompose(b, c.denominators, extension)
    if dec is None:
        return Rewritten(c, UNIT_DENOMINATOR, None, b)
    if dec.unit is None:
        raise UnsupportedCaseError(
            f"{b} lies in the ideal of w but the cofactor of {extension} is "
            f"{dec.last_cofactor}, not a nonzero constant; only b = u*f_(p+1) + "
            "sum a_i f_i with constant u is handled",
            dec,
        )
    target = extension * dec.unit

    def rewrite(coeff):
        if isinstance(coeff, Frac):
            return frac(coeff.num, target)
        return coeff

    new = c.numerator.map_coefficients(rewrite, SCALAR)
    return Rewritten(c.with_numerator(new), REWRITTEN, dec, b)


@dataclass(frozen=True, eq=False)
class BoundaryResult:
    input: LocalCohClass
    extension: Poly
    output: LocalCohClass
    case_tag: str
    decomposition: Decomposition | None = None
    unit_factor: Poly | None = None  # output represents unit_factor * boundary


def boundary(c: LocalCohClass, extension: Poly, point: str = "w") -> BoundaryResult:
    """Image of ``c`` under the Cousin differential at the point cut out by ``c.denominators + [extension]``."""
    if extension.variables != c.variables:
        raise PreconditionError("extension over a different variable list")
    if ideal_member(extension, Ideal(c.denominators), cofactors=False).in_ideal:
        raise PreconditionError(f"extension {extension} lies in the ideal of y; it does not cut out a point w")
    rw = rewrite_denominator(c, extension)
    dens_w = c.denominators + (extension,)
    unit = None
    if rw.case_tag == REWRITTEN:
        # coefficient (a/u)/f_{p+1} -> a/u ; polynomial coefficient g -> f_{p+1} g
        def push(coeff):
            if isinstance(coeff, Frac):
                return coeff.num * (1 / rw.decomposition.unit)
            return coeff * extension
    elif rw.case_tag == UNIT_DENOMINATOR:
        unit = rw.denominator

        def push(coeff):
            if isinstance(coeff, Frac):
                return coeff.num * unit.exact_div(coeff.den) * extension
            return coeff * unit * extension
    else:
        def push(coeff):
            return coeff * extension

    out = LocalCohClass(point, dens_w, rw.cls.numerator.map_coefficients(push, SCALAR))
    return BoundaryResult(c, extension, out, rw.case_tag, rw.decomposition, unit)


@dataclass(frozen=True, eq=False)
class SumBoundary:
    """Boundary of a sum: each part's output is reordered to the first part's denominators."""

    output: LocalCohClass
    parts: tuple
    aligned: tuple
    signs: tuple = field(default=())


def sum_boundaries(pairs, point: str = "w") -> SumBoundary:
    """Boundary of ``sum(c for c, _)`` given each summand with its extension."""
    pairs = list(pairs)
    if not pairs:
        raise PreconditionError("empty sum")
    parts = [boundary(c, ext, point) for c, ext in pairs]
    reference = parts[0].output.denominators
    aligned = []
    signs = []
    for part in parts:
        try:
            moved = reorder_to(part.output, reference)
        except PreconditionError as exc:
            raise PreconditionError(
                f"boundaries land at different points: {part.output.denominators} vs {reference}"
            ) from exc
        aligned.append(moved)
        signs.append(permutation_sign(permutation_of(part.output.denominators, reference)))
    total = aligned[0]
    for a in aligned[1:]:
        total = total.with_numerator(total.numerator + a.numerator)
    return SumBoundary(total, tuple(parts), tuple(aligned), tuple(signs))


def boundary_of_sum(cs, extension_map, point: str = "w") -> SumBoundary:
    """Boundary of a :class:`FormalSum`, ``extension_map`` giving each summand's f_(p+1) by point."""
    summands = list(cs) if isinstance(cs, FormalSum) else [cs]
    pairs = []
    for c in summands:
        if c.point not in extension_map:
            raise PreconditionError(f"no extension given for point {c.point!r}")
        pairs.append((c, extension_map[c.point]))
    return sum_boundaries(pairs, point)
