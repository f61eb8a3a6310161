"""Linear algebra over F_2^n with integer bitmasks.

Vectors are plain ints (< 2^n, addition is XOR).  Dense subsets of F_2^n are
`ElemSet`s: a single int whose bit v records membership of the element v, so
set algebra is int bitwise ops and translation x -> x + t is a bit
permutation (`xor_shift`).  Subspaces are kept in reduced row echelon form
with pivots strictly decreasing, which makes the basis tuple a canonical key:
two Subspace values are equal iff they are the same subspace.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Tuple

from .errors import BudgetExceededError, PreconditionError

__all__ = [
    "ElemSet",
    "Subspace",
    "bits_of",
    "xor_shift",
    "rref",
    "rref_insert",
    "span",
    "subspace_members",
    "gaussian_binomial",
    "enumerate_subspaces",
    "cosets",
]

MAX_SET_DIM = 20

_LEVEL_MASKS: dict = {}


def bits_of(mask: int) -> Iterator[int]:
    """Yield the indices of set bits, ascending."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def _level_mask(n: int, j: int) -> int:
    # positions p < 2^n whose j-th index bit is 0
    key = (n, j)
    m = _LEVEL_MASKS.get(key)
    if m is None:
        block = (1 << (1 << j)) - 1
        period = 1 << (j + 1)
        reps = 1 << (n - j - 1)
        m = block * (((1 << (reps * period)) - 1) // ((1 << period) - 1))
        _LEVEL_MASKS[key] = m
    return m


def xor_shift(mask: int, t: int, n: int) -> int:
    """Permute an ElemSet bitmask by the translation x -> x + t."""
    j = 0
    while t:
        if t & 1:
            s = 1 << j
            low = _level_mask(n, j)
            mask = ((mask >> s) & low) | ((mask & low) << s)
        t >>= 1
        j += 1
    return mask


@dataclass(frozen=True)
class ElemSet:
    """A subset of F_2^n as a 2^n-bit membership mask."""

    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_SET_DIM:
            raise PreconditionError(f"ambient dimension {self.n} outside 0..{MAX_SET_DIM}")
        if not 0 <= self.mask < (1 << (1 << self.n)):
            raise PreconditionError("membership mask has bits outside F_2^n")

    @classmethod
    def empty(cls, n: int) -> "ElemSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "ElemSet":
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_elements(cls, n: int, elems: Iterable[int]) -> "ElemSet":
        mask = 0
        for v in elems:
            if not 0 <= v < (1 << n):
                raise PreconditionError(f"element {v} outside F_2^{n}")
            mask |= 1 << v
        return cls(n, mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < (1 << self.n) and (self.mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.mask)

    def elements(self) -> List[int]:
        return list(bits_of(self.mask))

    def translate(self, t: int) -> "ElemSet":
        return ElemSet(self.n, xor_shift(self.mask, t, self.n))


def rref_insert(basis: Tuple[int, ...], v: int):
    """Insert v into an RREF basis; None if v is already in the span."""
    for b in basis:
        if v & (1 << (b.bit_length() - 1)):
            v ^= b
    if v == 0:
        return None
    pivot = 1 << (v.bit_length() - 1)
    out = []
    placed = False
    for b in basis:
        if b & pivot:
            b ^= v
        if not placed and b < pivot:
            out.append(v)
            placed = True
        out.append(b)
    if not placed:
        out.append(v)
    return tuple(out)


def rref(vectors: Iterable[int]) -> Tuple[int, ...]:
    """Canonical RREF basis (pivots strictly decreasing) of a span."""
    basis: Tuple[int, ...] = ()
    for v in vectors:
        nxt = rref_insert(basis, v)
        if nxt is not None:
            basis = nxt
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_2^n held as its canonical RREF basis."""

    n: int
    basis: Tuple[int, ...]

    def __post_init__(self):
        pivots = 0
        prev = 1 << self.n
        for b in self.basis:
            if not 0 < b < (1 << self.n):
                raise PreconditionError("basis vector outside F_2^n")
            pivot = 1 << (b.bit_length() - 1)
            if pivot >= prev:
                raise PreconditionError("basis pivots must strictly decrease")
            pivots |= pivot
            prev = pivot
        for b in self.basis:
            pivot = 1 << (b.bit_length() - 1)
            if b & (pivots ^ pivot):
                raise PreconditionError("basis is not reduced (pivot column not cleared)")

    @classmethod
    def from_vectors(cls, n: int, vectors: Iterable[int]) -> "Subspace":
        return cls(n, rref(vectors))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << len(self.basis)

    def reduce(self, v: int) -> int:
        """Clear all pivot bits of v: the minimum element of the coset v + V."""
        for b in self.basis:
            if v & (1 << (b.bit_length() - 1)):
                v ^= b
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def members(self) -> ElemSet:
        return subspace_members(self)


def span(X: ElemSet) -> Subspace:
    """Smallest subspace containing X (the linear span; subgroups of F_2^n)."""
    return Subspace(X.n, rref(bits_of(X.mask)))


def subspace_members(V: Subspace) -> ElemSet:
    mask = 1
    for b in V.basis:
        mask |= xor_shift(mask, b, V.n)
    return ElemSet(V.n, mask)


def gaussian_binomial(n: int, m: int) -> int:
    """Number of m-dimensional subspaces of F_2^n, exactly.

    prod_{i<m} (2^(n-i) - 1) / (2^(m-i) - 1), evaluated in integer arithmetic.
    """
    if not 0 <= m <= n <= 64:
        raise PreconditionError(f"gaussian_binomial needs 0 <= m <= n <= 64, got ({n}, {m})")
    num = den = 1
    for i in range(m):
        num *= (1 << (n - i)) - 1
        den *= (1 << (m - i)) - 1
    return num // den


def enumerate_subspaces(n: int, m: int, budget: int = 10**8) -> Iterator[Subspace]:
    """All m-dimensional subspaces of F_2^n, each exactly once.

    Bases are generated directly in canonical RREF: pick the descending pivot
    set, then run a counter over the free cells (non-pivot columns below each
    row's pivot).  Refuses up front if the total count exceeds `budget`.
    """
    if not 0 <= m <= n <= MAX_SET_DIM:
        raise PreconditionError(f"enumerate_subspaces needs 0 <= m <= n <= {MAX_SET_DIM}")
    total = gaussian_binomial(n, m)
    if total > budget:
        raise BudgetExceededError(
            f"{total} subspaces of dimension {m} in F_2^{n} exceeds budget {budget}"
        )
    return _gen_subspaces(n, m)


def _gen_subspaces(n: int, m: int) -> Iterator[Subspace]:
    if m == 0:
        yield Subspace(n, ())
        return
    for pivots_asc in combinations(range(n), m):
        pivots = tuple(reversed(pivots_asc))  # row i gets pivot pivots[i]
        pivot_mask = 0
        for p in pivots:
            pivot_mask |= 1 << p
        free_cells = []  # (row, position) in a fixed order
        for i, p in enumerate(pivots):
            for pos in range(p):
                if not (pivot_mask >> pos) & 1:
                    free_cells.append((i, pos))
        base_rows = [1 << p for p in pivots]
        for fill in range(1 << len(free_cells)):
            rows = base_rows.copy()
            f = fill
            while f:
                lsb = f & -f
                i, pos = free_cells[lsb.bit_length() - 1]
                rows[i] |= 1 << pos
                f ^= lsb
            yield Subspace(n, tuple(rows))


def cosets(V: Subspace) -> List[ElemSet]:
    """Partition of F_2^n into cosets of V, ordered by their minimum element.

    The minimum of a coset is its unique representative with all pivot bits
    clear, so representatives are exactly the fillings of the non-pivot
    positions.
    """
    n = V.n
    pivot_mask = 0
    for b in V.basis:
        pivot_mask |= 1 << (b.bit_length() - 1)
    free_positions = [p for p in range(n) if not (pivot_mask >> p) & 1]
    members = subspace_members(V).mask
    out = []
    for i in range(1 << len(free_positions)):
        rep = 0
        f = i
        while f:
            lsb = f & -f
            rep |= 1 << free_positions[lsb.bit_length() - 1]
            f ^= lsb
        out.append(ElemSet(n, xor_shift(members, rep, n)))
    return out
