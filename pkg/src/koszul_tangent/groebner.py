"""Buchberger's algorithm with cofactor tracking, ideal membership and regularity checks.

Every basis element carries its expression in terms of the original
generators, so membership tests can return cofactors against the generators
the caller supplied rather than against the Groebner basis.
"""

from __future__ import annotations

import os
import threading
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import GroebnerLimitError, PreconditionError, StructuralError
from .poly import Poly, _divides, grevlex_key

DEFAULT_GB_LIMIT = 512

_cache_lock = threading.Lock()


class RegularityWarning(UserWarning):
    pass


def gb_limit() -> int:
    """Maximum basis size, from ``KOSZUL_GB_LIMIT`` (default 512)."""
    raw = os.environ.get("KOSZUL_GB_LIMIT")
    if not raw:
        return DEFAULT_GB_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"KOSZUL_GB_LIMIT must be an integer, got {raw!r}") from None
    if value < 1:
        raise PreconditionError("KOSZUL_GB_LIMIT must be positive")
    return value


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _reduce(f, fcof, basis, key):
    """Reduce ``f`` by ``basis`` (list of (g, cof, lexp, lc)), first divisor wins.

    ``fcof`` expresses ``f`` in the original generators, or is None when the
    caller only wants the quotient vector.  Returns (remainder, remainder_cof,
    quotient_cof) where quotient_cof expresses ``f - remainder``.
    """
    variables = f.variables
    m = len(basis[0][1]) if basis else 0
    zero = Poly.zero(variables)
    quot = [zero] * m
    p = f
    rem = {}
    while p:
        exp, c = p.leading(key)
        for g, gcof, lexp, lc in basis:
            if _divides(lexp, exp):
                shift = _sub(exp, lexp)
                coeff = c / lc
                p = p - g.mul_term(shift, coeff)
                quot = [q + gc.mul_term(shift, coeff) if gc else q for q, gc in zip(quot, gcof)]
                break
        else:
            rem[exp] = c
            p = Poly._raw(variables, {e: v for e, v in p.terms.items() if e != exp})
    r = Poly._raw(variables, rem)
    rcof = None
    if fcof is not None:
        rcof = [a - b for a, b in zip(fcof, quot)]
    return r, rcof, quot


def _entry(g, cof, key):
    lexp, lc = g.leading(key)
    return (g, cof, lexp, lc)


def _monic(g, cof, key):
    _, lc = g.leading(key)
    inv = 1 / lc
    return g * inv, [c * inv for c in cof]


def buchberger(generators: Sequence[Poly], key=grevlex_key, limit: int | None = None):
    """Reduced Groebner basis of ``generators`` with cofactors.

    Returns a list of ``(g, cof)`` where ``g == sum(c * f for c, f in zip(cof, generators))``.
    Sorted by leading monomial, largest first.
    """
    generators = list(generators)
    if not generators:
        return []
    variables = generators[0].variables
    for f in generators:
        if f.variables != variables:
            raise StructuralError("generators over different variable lists")
    if limit is None:
        limit = gb_limit()
    m = len(generators)
    zero = Poly.zero(variables)
    basis = []
    pairs = []

    def add(g, cof):
        g, cof = _monic(g, cof, key)
        basis.append(_entry(g, cof, key))
        k = len(basis) - 1
        for i in range(k):
            pairs.append((i, k))
        if len(basis) > limit:
            raise GroebnerLimitError(
                f"Groebner basis exceeded {limit} elements (set KOSZUL_GB_LIMIT to raise the cap)"
            )

    for j, f in enumerate(generators):
        if not f:
            continue
        cof = [zero] * m
        cof[j] = Poly.one(variables)
        r, rcof, _ = _reduce(f, cof, basis, key) if basis else (f, cof, None)
        if r:
            add(r, rcof)

    while pairs:
        pairs.sort(key=lambda ij: key(_lcm(basis[ij[0]][2], basis[ij[1]][2])))
        i, j = pairs.pop(0)
        gi, ci, ei, lci = basis[i]
        gj, cj, ej, lcj = basis[j]
        if all(not (a and b) for a, b in zip(ei, ej)):
            continue  # coprime leading monomials
        lcm = _lcm(ei, ej)
        si, sj = _sub(lcm, ei), _sub(lcm, ej)
        s = gi.mul_term(si, 1 / lci) - gj.mul_term(sj, 1 / lcj)
        scof = [a.mul_term(si, 1 / lci) - b.mul_term(sj, 1 / lcj) for a, b in zip(ci, cj)]
        r, rcof, _ = _reduce(s, scof, basis, key)
        if r:
            add(r, rcof)

    # minimalize
    entries = basis
    keep = []
    for idx, (g, cof, lexp, lc) in enumerate(entries):
        dominated = False
        for jdx, other in enumerate(entries):
            if jdx == idx:
                continue
            if _divides(other[2], lexp) and (other[2] != lexp or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append((g, cof, lexp, lc))
    # interreduce tails
    reduced = []
    for idx, (g, cof, lexp, lc) in enumerate(keep):
        others = [e for jdx, e in enumerate(keep) if jdx != idx]
        lead = Poly._raw(variables, {lexp: lc})
        tail = g - lead
        lead_cof = cof
        if others and tail:
            r, _, quot = _reduce(tail, None, others, key)
            g = lead + r
            cof = [a - b for a, b in zip(lead_cof, quot)]
        reduced.append(_entry(g, cof, key))
    reduced.sort(key=lambda e: key(e[2]), reverse=True)
    return [(g, cof) for g, cof, _, _ in reduced]


def groebner(generators, key=grevlex_key, limit: int | None = None) -> list[Poly]:
    """Reduced Groebner basis (grevlex unless ``key`` says otherwise)."""
    if isinstance(generators, Ideal):
        return list(generators.basis)
    return [g for g, _ in buchberger(list(generators), key, limit)]


@dataclass(frozen=True, eq=False)
class Ideal:
    """An ideal given by generators; the grevlex Groebner basis is computed once on demand."""

    generators: tuple[Poly, ...]
    variables: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __init__(self, generators, variables=None):
        generators = tuple(generators)
        if variables is None:
            if not generators:
                raise StructuralError("an ideal with no generators needs explicit variables")
            variables = generators[0].variables
        variables = tuple(variables)
        for g in generators:
            if g.variables != variables:
                raise StructuralError("ideal generators over different variable lists")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_cache", {})

    def _gb(self, limit: int | None = None):
        gb = self._cache.get("gb")
        if gb is None:
            with _cache_lock:
                gb = self._cache.get("gb")
                if gb is None:
                    gb = [
                        _entry(g, cof, grevlex_key)
                        for g, cof in buchberger(self.generators, limit=limit)
                    ]
                    self._cache["gb"] = gb
        return gb

    @property
    def cached_groebner(self):
        gb = self._cache.get("gb")
        return None if gb is None else [e[0] for e in gb]

    @property
    def basis(self) -> list[Poly]:
        return [e[0] for e in self._gb()]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.basis)

    def __contains__(self, f):
        return ideal_member(f, self).in_ideal

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


class Membership(NamedTuple):
    in_ideal: bool
    cofactors: list | None
    remainder: Poly


def _as_ideal(ideal) -> Ideal:
    return ideal if isinstance(ideal, Ideal) else Ideal(ideal)


def normal_form(f: Poly, ideal) -> Poly:
    ideal = _as_ideal(ideal)
    if f.variables != ideal.variables:
        raise StructuralError("polynomial and ideal over different variable lists")
    gb = ideal._gb()
    if not gb:
        return f
    r, _, _ = _reduce(f, None, gb, grevlex_key)
    return r


def ideal_member(f: Poly, ideal, cofactors: bool = True) -> Membership:
    """Decide ``f in ideal``.

    With ``cofactors`` the returned list ``q`` satisfies
    ``f == sum(q_j * ideal.generators[j]) + remainder``.
    """
    ideal = _as_ideal(ideal)
    if f.variables != ideal.variables:
        raise StructuralError("polynomial and ideal over different variable lists")
    gb = ideal._gb()
    zero = Poly.zero(f.variables)
    if not gb:
        return Membership(not f, [zero] * len(ideal.generators) if cofactors else None, f)
    r, _, quot = _reduce(f, None, gb, grevlex_key)
    return Membership(not r, quot if cofactors else None, r)


def is_unit_mod(f: Poly, ideal) -> bool:
    """True iff ``f`` is congruent to a nonzero constant modulo a proper ideal."""
    ideal = _as_ideal(ideal)
    if ideal.is_unit():
        raise PreconditionError("unit ideal has no residue field")
    r = normal_form(f, ideal)
    return bool(r) and r.is_constant()


def intersect_principal(ideal, f: Poly, limit: int | None = None) -> list[Poly]:
    """Generators of ``ideal ∩ (f)`` via elimination of an auxiliary variable."""
    ideal = _as_ideal(ideal)
    t = "_t"
    while t in ideal.variables:
        t += "_"
    big = (t,) + ideal.variables
    tt = Poly.var(big, t)
    gens = [tt * g.embed(big) for g in ideal.generators]
    gens.append((1 - tt) * f.embed(big))

    def elim_key(e):
        return (e[0], grevlex_key(e[1:]))

    out = []
    for g in groebner(gens, key=elim_key, limit=limit):
        if all(e[0] == 0 for e in g.terms):
            out.append(Poly._raw(ideal.variables, {e[1:]: c for e, c in g.terms.items()}))
    return out


def ideal_quotient(ideal, f: Poly, limit: int | None = None) -> Ideal:
    """``(ideal : f)``."""
    ideal = _as_ideal(ideal)
    if not f:
        raise PreconditionError("quotient by zero")
    if not ideal.generators:
        return Ideal([], ideal.variables)
    return Ideal([h.exact_div(f) for h in intersect_principal(ideal, f, limit)], ideal.variables)


def _names(k):
    return ", ".join(f"f{j}" for j in range(1, k + 1))


class RegularityReport(NamedTuple):
    ok: bool
    detail: str
    verified: bool = True


def check_regular(seq: Sequence[Poly], limit: int | None = None) -> RegularityReport:
    """Check that ``seq`` is a regular sequence in the polynomial ring.

    Stage i requires ``(f_1..f_i)`` proper and ``((f_1..f_{i-1}) : f_i) == (f_1..f_{i-1})``.
    When a Groebner computation exceeds ``limit`` the verdict is ``ok`` but
    ``verified`` is False and a :class:`RegularityWarning` is emitted.
    """
    seq = list(seq)
    if not seq:
        raise PreconditionError("empty sequence")
    variables = seq[0].variables
    try:
        for i, f in enumerate(seq, start=1):
            if not f:
                return RegularityReport(False, f"stage {i}: f{i} is zero")
            prefix = Ideal(seq[:i], variables)
            prefix._gb(limit)
            if prefix.is_unit():
                return RegularityReport(False, f"stage {i}: ({_names(i)}) is the unit ideal")
            if i == 1:
                continue
            before = Ideal(seq[: i - 1], variables)
            quotient = ideal_quotient(before, f, limit)
            for q in quotient.generators:
                if not ideal_member(q, before, cofactors=False).in_ideal:
                    return RegularityReport(
                        False,
                        f"stage {i}: {q} kills f{i} modulo ({_names(i - 1)}) but is not in it",
                    )
    except GroebnerLimitError as exc:
        warnings.warn(f"regularity unverified, proceeding: {exc}", RegularityWarning, stacklevel=2)
        return RegularityReport(True, f"unverified, proceeding ({exc})", verified=False)
    return RegularityReport(True, "regular")
