"""Koszul complexes of a sequence over R or R[eps], and comparison maps for permuted sequences.

Degree-i module has basis ``e_S`` for increasing ``S`` of size i (0-based
indices).  ``A_i`` is the ``C(p, i-1) x C(p, i)`` matrix of ``Λ^i → Λ^{i-1}``.

Signs: ``A_1`` is the row ``(f_1, ..., f_p)``; the top map sends
``e_1^...^e_p`` to ``sum_j (-1)^j f_j e_1^..ê_j..^e_p`` (1-based j).  Every
other degree uses the left contraction ``e_S -> sum_k (-1)^k f_{S_k} e_{S - S_k}``,
except that for p >= 4 degree p-1 may be negated so the complex keeps the
orientation under which ``(1/p!) dA_1 ... dA_p == dh_1 ^ ... ^ dh_p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import PreconditionError


def wedge_basis(p: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(p), i))


def degree_signs(p: int) -> list[int]:
    """Sign multiplying the left-contraction differential in degrees 1..p."""
    signs = [1] * (p + 1)
    if p >= 2:
        orientation = -1 if (p * (p - 1) // 2) % 2 else 1
        signs[p] = -1
        signs[p - 1] = -orientation
    return signs[1:]


def _zero_like(x):
    return x * 0


def matmul(a, b, mul=None, zero=None):
    """Matrix product for entries of any ring-like type (lists of rows)."""
    if not a or not b:
        raise PreconditionError("empty matrix")
    if len(a[0]) != len(b):
        raise PreconditionError(f"shape mismatch {len(a)}x{len(a[0])} · {len(b)}x{len(b[0])}")
    if mul is None:
        mul = lambda x, y: x * y  # noqa: E731
    out = []
    for row in a:
        new = []
        for c in range(len(b[0])):
            acc = zero
            for k, x in enumerate(row):
                term = mul(x, b[k][c])
                acc = term if acc is None else acc + term
            new.append(acc)
        out.append(new)
    return out


@dataclass(frozen=True)
class KoszulComplex:
    sequence: tuple
    matrices: tuple  # matrices[i - 1] is A_i
    basis_labels: tuple  # basis_labels[i] lists the wedge basis of degree i

    @property
    def length(self) -> int:
        return len(self.sequence)

    def differential(self, i: int):
        if not 1 <= i <= self.length:
            raise PreconditionError(f"no differential A_{i} for p = {self.length}")
        return self.matrices[i - 1]

    def rank(self, i: int) -> int:
        return comb(self.length, i)

    def composite_is_zero(self) -> bool:
        for i in range(1, self.length):
            prod = matmul(self.differential(i), self.differential(i + 1))
            if any(x for row in prod for x in row):
                return False
        return True

    def render(self) -> str:
        lines = []
        for i in range(self.length, 0, -1):
            labels_src = [_label(s) for s in self.basis_labels[i]]
            labels_dst = [_label(s) for s in self.basis_labels[i - 1]]
            lines.append(f"A_{i}: Λ^{i} -> Λ^{i - 1}   columns {labels_src}, rows {labels_dst}")
            for row in self.differential(i):
                lines.append("  [ " + ", ".join(str(x) for x in row) + " ]")
        return "\n".join(lines)


def _label(s):
    return "^".join(f"e{j + 1}" for j in s) if s else "1"


def build_koszul(seq: Sequence) -> KoszulComplex:
    """Koszul complex of ``seq`` (Poly or DualPoly entries)."""
    seq = tuple(seq)
    p = len(seq)
    if p < 1:
        raise PreconditionError("Koszul complex of an empty sequence")
    zero = _zero_like(seq[0])
    signs = degree_signs(p)
    bases = tuple(tuple(wedge_basis(p, i)) for i in range(p + 1))
    matrices = []
    for i in range(1, p + 1):
        rows = {s: r for r, s in enumerate(bases[i - 1])}
        mat = [[zero] * len(bases[i]) for _ in bases[i - 1]]
        for c, s in enumerate(bases[i]):
            for k, j in enumerate(s):
                sign = signs[i - 1] * (-1 if k % 2 else 1)
                target = s[:k] + s[k + 1:]
                mat[rows[target]][c] = seq[j] if sign > 0 else -seq[j]
        matrices.append(tuple(tuple(row) for row in mat))
    return KoszulComplex(seq, tuple(matrices), bases)


# -- comparison of permuted sequences ---------------------------------------


def _det(m):
    """Determinant of a small exact matrix by Laplace expansion."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for c in range(n):
        if m[0][c]:
            minor = [row[:c] + row[c + 1:] for row in m[1:]]
            total += (-1) ** c * m[0][c] * _det(minor)
    return total


def exterior_power(m, i: int):
    """``Λ^i`` of a square matrix in the sorted wedge bases."""
    n = len(m)
    basis = wedge_basis(n, i)
    return [
        [_det([[m[r][c] for c in cols] for r in rows]) for cols in basis]
        for rows in basis
    ]


def permutation_of(seq_a: Sequence, seq_b: Sequence) -> list[int]:
    """``perm`` with ``seq_b[k] == seq_a[perm[k]]``; repeated entries are matched in order."""
    if len(seq_a) != len(seq_b):
        raise PreconditionError("sequences have different lengths")
    used = [False] * len(seq_a)
    perm = []
    for b in seq_b:
        for j, a in enumerate(seq_a):
            if not used[j] and a == b:
                used[j] = True
                perm.append(j)
                break
        else:
            raise PreconditionError(f"{b} does not occur in the first sequence")
    return perm


def permutation_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    if sorted(perm) != list(range(len(perm))):
        raise PreconditionError(f"{perm} is not a permutation")
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Comparison:
    permutation: tuple
    chain_map: tuple  # chain_map[i] maps degree i of the first complex to degree i of the second
    det_A1: Fraction


def permute_comparison(seq_a: Sequence, seq_b: Sequence) -> Comparison:
    """Chain isomorphism ``K(seq_a) -> K(seq_b)`` that is the identity in degree 0.

    In degree 1 it is the permutation matrix ``T`` with ``seq_b · T = seq_a``;
    in degree i it is ``Λ^i T``; in the top degree it is ``det T``.
    """
    perm = permutation_of(seq_a, seq_b)
    p = len(perm)
    t1 = [[Fraction(1) if perm[k] == j else Fraction(0) for j in range(p)] for k in range(p)]
    maps = tuple(tuple(tuple(row) for row in exterior_power(t1, i)) for i in range(p + 1))
    return Comparison(tuple(perm), maps, _det(t1))
