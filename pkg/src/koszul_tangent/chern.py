"""Local fundamental class of a Koszul complex and its truncation in eps.

The fundamental class of a complex with differentials ``M_1, ..., M_p`` has
``F_p -> F_0 ⊗ Ω^p`` component ``(1/p!) dM_1 dM_2 ... dM_p``, the product
taken with wedge multiplication of entries (left factor first).  For a Koszul
complex on ``h_1..h_p`` this is the 1x1 matrix ``dh_1 ^ ... ^ dh_p``; both
routes are available so one can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .dual import DualPoly
from .errors import OracleMismatchError, PreconditionError
from .forms import DUAL, SCALAR, DiffForm, contract_eps, d, wedge
from .koszul import KoszulComplex, matmul


def differential_matrix(m):
    """Entrywise ``d`` of a matrix of functions."""
    return [[d(x) for x in row] for row in m]


def local_fundamental_class(matrices) -> list:
    """``(1/p!) dM_1 ∘ ... ∘ dM_p`` for matrices ``M_1..M_p`` (``M_1`` first)."""
    matrices = list(matrices)
    if not matrices:
        raise PreconditionError("need at least one differential")
    p = len(matrices)
    sample = matrices[0][0][0]
    kind = DUAL if isinstance(sample, DualPoly) else SCALAR
    zero = DiffForm.zero(sample.variables, 0, kind)
    acc = differential_matrix(matrices[0])
    for m in matrices[1:]:
        acc = matmul(acc, differential_matrix(m), mul=wedge, zero=zero)
    scale = Fraction(1, factorial(p))
    return [[x * scale for x in row] for row in acc]


@dataclass(frozen=True, eq=False)
class FundClass:
    source_complex: KoszulComplex
    form: DiffForm

    @property
    def component_p0(self):
        """The ``F_p -> F_0 ⊗ Ω^p`` component as a 1x1 matrix."""
        return [[self.form]]


def closed_form(k: KoszulComplex) -> DiffForm:
    """``dh_1 ^ ... ^ dh_p``."""
    out = d(k.sequence[0])
    for h in k.sequence[1:]:
        out = wedge(out, d(h))
    return out


def fundamental_class(k: KoszulComplex, method: str = "closed") -> FundClass:
    """Fundamental class of a Koszul complex.

    ``method`` is ``"closed"`` (wedge of the dh_i), ``"matrix"`` (the
    brute-force matrix composite) or ``"oracle"`` (both, raising
    :class:`OracleMismatchError` if they differ).
    """
    if not isinstance(k, KoszulComplex):
        raise PreconditionError("only Koszul complexes are supported")
    if method == "closed":
        return FundClass(k, closed_form(k))
    brute = local_fundamental_class(k.matrices)
    if len(brute) != 1 or len(brute[0]) != 1:
        raise PreconditionError("F_p -> F_0 component is not 1x1; not a Koszul complex")
    form = brute[0][0]
    if method == "matrix":
        return FundClass(k, form)
    if method == "oracle":
        expected = closed_form(k)
        if form != expected:
            raise OracleMismatchError(
                f"matrix composite {form} differs from closed form {expected}"
            )
        return FundClass(k, form)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True, eq=False)
class NewtonRep:
    """Generalized-fraction data ``[numerator | denominators]``."""

    denominators: tuple
    numerator: DiffForm

    def __str__(self):
        return f"[ {self.numerator} | {', '.join(str(f) for f in self.denominators)} ]"


def truncate(fc: FundClass) -> NewtonRep:
    """Contract with d/deps and set eps = 0; denominators are the eps = 0 sequence."""
    seq = fc.source_complex.sequence
    if not all(isinstance(h, DualPoly) for h in seq):
        raise PreconditionError("truncation needs a complex over the dual numbers")
    dens = tuple(h.base for h in seq)
    return NewtonRep(dens, contract_eps(fc.form))
