"""The map pi, Case 1/Case 2 classification, the corrector deformation and Milnor certification.

A :class:`DeformationScene` describes ``Y'`` generically by
``f_1 + eps g_1, ..., f_p + eps g_p`` together with ``f_{p+1}`` cutting out a
point w on Y.  Boundary verdicts are always relative to that tested w.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

from .chern import fundamental_class, truncate
from .cousin import (
    Decomposition,
    SumBoundary,
    boundary_of_sum,
    decompose,
    sum_boundaries,
)
from .dual import DualPoly
from .errors import LocalizationError, PreconditionError, StructuralError, UnsupportedCaseError
from .groebner import Ideal, RegularityWarning, check_regular, ideal_member
from .koszul import build_koszul
from .localcoh import FormalSum, LocalCohClass, add_classes, class_is_zero
from .poly import Frac, Poly, frac, numerator_denominator

DEFAULT_LABELS = {"Y": "y", "Z": "z", "w": "w"}


@dataclass(frozen=True, eq=False)
class DeformationScene:
    variables: tuple
    p: int
    f: tuple
    g: tuple
    extension: Poly
    labels: dict = field(default_factory=dict)
    check_regular: bool = True

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "labels", {**DEFAULT_LABELS, **(self.labels or {})})
        if self.p < 1:
            raise PreconditionError("p must be at least 1")
        if len(self.f) != self.p:
            raise PreconditionError(f"|f| = {len(self.f)} but p = {self.p}")
        if len(self.g) != self.p:
            raise PreconditionError(f"|g| = {len(self.g)} but p = {self.p}")
        for x in self.f + self.g + (self.extension,):
            if x.variables != self.variables:
                raise StructuralError(f"{x} is not over {self.variables}")
        prime = self.prime
        for gi in self.g:
            if isinstance(gi, Frac) and ideal_member(gi.den, prime, cofactors=False).in_ideal:
                raise LocalizationError(
                    f"denominator {gi.den} lies in ({', '.join(map(str, self.f))}); "
                    "the perturbation is not defined at the generic point of Y"
                )

    @property
    def prime(self) -> Ideal:
        return Ideal(self.f, self.variables)

    @property
    def point_ideal(self) -> Ideal:
        return Ideal(self.f + (self.extension,), self.variables)

    def lifted_sequence(self) -> list[DualPoly]:
        return [DualPoly(fi, gi) for fi, gi in zip(self.f, self.g)]

    def nonzero_perturbations(self) -> list[int]:
        return [i for i, gi in enumerate(self.g) if gi]

    def advisories(self) -> list[str]:
        """Regularity findings for f and f + [extension]; empty when everything checks."""
        if not self.check_regular:
            return []
        notes = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegularityWarning)
            for name, seq in (("f", self.f), ("f + extension", self.f + (self.extension,))):
                report = check_regular(seq)
                if not report.ok:
                    notes.append(f"{name} is not a regular sequence: {report.detail}")
                elif not report.verified:
                    notes.append(f"regularity of {name} unverified, proceeding: {report.detail}")
        return notes


def pi(scene: DeformationScene, method: str = "closed") -> LocalCohClass:
    """``pi(Y')``: Koszul complex over R[eps], fundamental class, truncation."""
    k = build_koszul(scene.lifted_sequence())
    rep = truncate(fundamental_class(k, method))
    return LocalCohClass(scene.labels["Y"], rep.denominators, rep.numerator, scene.prime)


def split_scene(scene: DeformationScene) -> list[DeformationScene]:
    """One scene per nonzero perturbation (the scene itself when there is at most one)."""
    idx = scene.nonzero_perturbations()
    if len(idx) <= 1:
        return [scene]
    zero = Poly.zero(scene.variables)
    return [
        replace(scene, g=tuple(gi if j == i else zero for j, gi in enumerate(scene.g)))
        for i in idx
    ]


@dataclass(frozen=True, eq=False)
class CaseVerdict:
    case: int
    a: object
    b: Poly
    decomposition: Decomposition | None


def _single_perturbation(scene: DeformationScene):
    idx = scene.nonzero_perturbations()
    if len(idx) > 1:
        raise UnsupportedCaseError(
            f"{len(idx)} nonzero perturbations; split the scene by linearity first"
        )
    if idx and idx[0] != 0:
        raise UnsupportedCaseError(
            "the perturbation must sit on the first generator; reorder f so that it does"
        )
    return numerator_denominator(scene.g[0])


def classify_case(scene: DeformationScene) -> CaseVerdict:
    """Case 1 when the denominator b of g_1 = a/b is a unit at w, Case 2 otherwise."""
    a, b = _single_perturbation(scene)
    dec = decompose(b, scene.f, scene.extension)
    return CaseVerdict(1 if dec is None else 2, a, b, dec)


@dataclass(frozen=True, eq=False)
class CorrectorResult:
    case: int
    Z_sequence: tuple | None
    Zprime_perturbation: tuple | None
    corrector_scene: DeformationScene | None
    certificate: SumBoundary
    milnor_member: bool
    antisymmetric: bool | None = None
    classes: tuple = ()


def corrector_scene(scene: DeformationScene, verdict: CaseVerdict | None = None) -> DeformationScene:
    """The scene of Z' = (f_{p+1} + eps a/f_1, f_2, ..., f_p) with extension f_1."""
    verdict = verdict or classify_case(scene)
    if verdict.case != 2:
        raise PreconditionError("a corrector is only needed in Case 2")
    dec = verdict.decomposition
    if dec.unit is None:
        raise UnsupportedCaseError(
            f"cofactor of {scene.extension} in {verdict.b} is {dec.last_cofactor}; "
            "only a constant cofactor (b = u*f_(p+1) + sum a_i f_i) is handled",
            dec,
        )
    a = verdict.a * (1 / dec.unit)
    f1 = scene.f[0]
    z_seq = (scene.extension,) + scene.f[1:]
    if ideal_member(f1, Ideal(z_seq), cofactors=False).in_ideal:
        raise LocalizationError(f"{f1} lies in the ideal of Z; a/{f1} is not defined there")
    zero = Poly.zero(scene.variables)
    pert = (frac(a, f1),) + (zero,) * (scene.p - 1)
    labels = {"Y": scene.labels["Z"], "Z": scene.labels["Y"], "w": scene.labels["w"]}
    return DeformationScene(
        scene.variables, scene.p, z_seq, pert, f1, labels, scene.check_regular
    )


def correct(scene: DeformationScene, method: str = "closed") -> CorrectorResult:
    """Certificate that pi(Y') (Case 1) or pi(Y') + pi(Z') (Case 2) has vanishing boundary at w."""
    verdict = classify_case(scene)
    w = scene.labels["w"]
    pi_y = pi(scene, method)
    if verdict.case == 1:
        cert = sum_boundaries([(pi_y, scene.extension)], w)
        return CorrectorResult(1, None, None, None, cert, class_is_zero(cert.output), None, (pi_y,))
    z = corrector_scene(scene, verdict)
    pi_z = pi(z, method)
    cert = boundary_of_sum(
        FormalSum([pi_y, pi_z]), {pi_y.point: scene.extension, pi_z.point: z.extension}, w
    )
    y_part, z_part = cert.aligned
    antisymmetric = z_part.numerator == -y_part.numerator
    return CorrectorResult(
        2, z.f, z.g, z, cert, class_is_zero(cert.output), antisymmetric, (pi_y, pi_z)
    )


def milnor_certificate(scenes, method: str = "closed") -> SumBoundary:
    """Boundary at the common w of the sum of pi over ``scenes`` (each split by linearity)."""
    scenes = list(scenes)
    if not scenes:
        raise PreconditionError("no scenes")
    w = scenes[0].labels["w"]
    pairs = []
    for s in scenes:
        for part in split_scene(s):
            pairs.append((pi(part, method), part.extension))
    return sum_boundaries(pairs, w)


def verify_milnor_cycle(scenes, method: str = "closed") -> bool:
    """True iff the boundary of the summed pi classes vanishes at the common w."""
    return class_is_zero(milnor_certificate(scenes, method).output)


def pi_sum(scene: DeformationScene, method: str = "closed") -> LocalCohClass:
    """pi computed perturbation by perturbation and added; equals :func:`pi` by linearity."""
    total = None
    for part in split_scene(scene):
        c = pi(part, method)
        total = c if total is None else add_classes(total, c)
    return total


def generator_diagnostic(scene: DeformationScene, alternatives, method: str = "closed"):
    """pi of the scene recomputed with alternative generator lists for Y.

    Returns ``(f_alt, class)`` pairs.  Classes over different denominators are
    not compared; no equality is asserted.
    """
    out = []
    for alt in alternatives:
        out.append((tuple(alt), pi(replace(scene, f=tuple(alt)), method)))
    return out
