"""The finite atomic lattice c00(Omega) with |Omega| = m, i.e. Q^m ordered coordinatewise.

Ideals are coordinate spans ``span{e_i : i in S}``; indices are 1-based.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import Scalar, to_rational

MAX_DIM = 16


@dataclass(frozen=True)
class FinVec:
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(to_rational(x) for x in self.entries))
        if not self.entries:
            raise ValueError("dimension must be positive")

    @classmethod
    def of(cls, *xs: Scalar) -> FinVec:
        return cls(tuple(xs))

    @classmethod
    def unit(cls, i: int, m: int) -> FinVec:
        return cls(tuple(1 if j == i else 0 for j in range(1, m + 1)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __abs__(self) -> FinVec:
        return FinVec(tuple(abs(x) for x in self.entries))

    def meet(self, other: FinVec) -> FinVec:
        return FinVec(tuple(min(x, y) for x, y in zip(self.entries, other.entries)))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.entries, 1) if x != 0)

    def dominated_by(self, other: FinVec) -> bool:
        return all(abs(x) <= abs(y) for x, y in zip(self.entries, other.entries))


@dataclass(frozen=True)
class CoordIdeal:
    dim: int
    support: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", frozenset(self.support))
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if not self.support <= set(range(1, self.dim + 1)):
            raise ValueError(f"support {sorted(self.support)} outside 1..{self.dim}")

    @property
    def proper(self) -> bool:
        return len(self.support) < self.dim

    def __contains__(self, v: FinVec) -> bool:
        return v.support() <= self.support

    def __le__(self, other: CoordIdeal) -> bool:
        return self.support <= other.support

    def __lt__(self, other: CoordIdeal) -> bool:
        return self.support < other.support

    def __repr__(self) -> str:
        return f"CoordIdeal({self.dim}, {sorted(self.support)})"


# ---------------------------------------------------------------- solidity


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def in_span(v: FinVec, basis: Sequence[FinVec]) -> bool:
    if not basis:
        return not v.support()
    rows = [b.entries for b in basis]
    return _rank(rows) == _rank([*rows, v.entries])


def solidity_witness(basis: Sequence[FinVec], m: int) -> tuple[FinVec, FinVec] | None:
    """A pair (x, y) with |x| <= |y|, y in span(basis), x not in it; None if the grid finds none.

    The grid tries every sign/half combination of the basis vectors for y and,
    for x, the single-coordinate restrictions and the half of y.
    """
    coeffs = (Fraction(1), Fraction(-1), Fraction(1, 2))
    for combo in itertools.product(coeffs, repeat=len(basis)):
        y = FinVec(tuple(sum((c * b.entries[i] for c, b in zip(combo, basis)), Fraction(0)) for i in range(m)))
        candidates = [FinVec(tuple(y.entries[i] if i == j else 0 for i in range(m))) for j in range(m)]
        candidates.append(FinVec(tuple(x / 2 for x in y.entries)))
        for x in candidates:
            if x.dominated_by(y) and not in_span(x, basis):
                return x, y
    return None


def ideal_basis(I: CoordIdeal) -> list[FinVec]:
    return [FinVec.unit(i, I.dim) for i in sorted(I.support)]


def enumerate_ideals(m: int, verify: bool = True) -> list[CoordIdeal]:
    """All 2^m ideals of Q^m, subsets in binary order."""
    if m < 1:
        raise ValueError("m must be at least 1")
    ideals = [
        CoordIdeal(m, frozenset(i + 1 for i in range(m) if mask >> i & 1)) for mask in range(2**m)
    ]
    if verify:
        for I in ideals:
            if solidity_witness(ideal_basis(I), m) is not None:
                raise AssertionError(f"{I} failed the solidity check")
    return ideals


# ---------------------------------------------------------------- classification


class IdealKind(str, enum.Enum):
    WHOLE = "Whole"
    MAXIMAL = "Maximal"
    PRIME_NON_MAXIMAL = "PrimeNonMaximal"
    NON_PRIME = "NonPrime"


@dataclass(frozen=True)
class Classification:
    kind: IdealKind
    minimal_prime: bool
    witness: tuple[int, int] | None = None  # disjoint e_i, e_j outside a non-prime ideal

    @property
    def prime(self) -> bool:
        return self.kind in (IdealKind.MAXIMAL, IdealKind.PRIME_NON_MAXIMAL)


def classify_ideal(I: CoordIdeal) -> Classification:
    missing = sorted(set(range(1, I.dim + 1)) - I.support)
    if not missing:
        return Classification(IdealKind.WHOLE, False)
    if len(missing) == 1:
        return Classification(IdealKind.MAXIMAL, True)
    return Classification(IdealKind.NON_PRIME, False, (missing[0], missing[1]))


def disjoint_pair_holds(I: CoordIdeal, i: int, j: int) -> bool:
    """e_i and e_j are disjoint, neither lies in I, and their meet does."""
    ei, ej = FinVec.unit(i, I.dim), FinVec.unit(j, I.dim)
    return i != j and ei.meet(ej) in I and not ei.meet(ej).support() and ei not in I and ej not in I


# ---------------------------------------------------------------- atoms and chains


def atom_check(v: FinVec) -> int | None:
    """The index i when v = c * e_i with c > 0."""
    supp = v.support()
    if len(supp) != 1:
        return None
    (i,) = supp
    return i if v.entries[i - 1] > 0 else None


def disjoint_complement(i: int, m: int) -> CoordIdeal:
    return CoordIdeal(m, frozenset(range(1, m + 1)) - {i})


def generated_ideal(v: FinVec) -> CoordIdeal:
    return CoordIdeal(v.dim, v.support())


def noetherian_chain_demo(m: int) -> list[CoordIdeal]:
    """J_k = span{e_1..e_k} for k = 1..m; each inclusion is strict, witnessed by e_{k+1}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    chain = [CoordIdeal(m, frozenset(range(1, k + 1))) for k in range(1, m + 1)]
    for k, (lo, hi) in enumerate(zip(chain, chain[1:]), start=1):
        w = FinVec.unit(k + 1, m)
        if not (lo < hi and w in hi and w not in lo):
            raise AssertionError(f"chain step {k} is not strict")
    return chain
