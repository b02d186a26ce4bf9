"""Bit-packed GF(2) vectors, reduced echelon bases, canonical coset reps.

Coordinates are indexed 1..n on every public surface.  Internally a vector
is a single Python int with coordinate i stored at bit i-1, so arbitrary
block lengths work without word-size caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class BitVector:
    """Immutable vector in F_2^n; coordinate i lives at bit i-1 of `bits`."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vector length must be positive, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit pattern does not fit in {self.n} coordinates")

    @classmethod
    def zero(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVector":
        """Standard basis vector e_i (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} outside 1..{n}")
        return cls(n, 1 << (i - 1))

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 1 <= i <= n:
                raise ValueError(f"coordinate {i} outside 1..{n}")
            if (bits >> (i - 1)) & 1:
                raise ValueError(f"duplicate coordinate {i}")
            bits |= 1 << (i - 1)
        return cls(n, bits)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse "01101"-style text; the leftmost character is coordinate 1."""
        if not s or any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {s!r}")
        bits = 0
        for pos, c in enumerate(s):
            if c == "1":
                bits |= 1 << pos
        return cls(len(s), bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """Set coordinates as a strictly increasing 1-based tuple."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length())
            bits ^= low
        return tuple(out)

    def get(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"coordinate {i} outside 1..{self.n}")
        return (self.bits >> (i - 1)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> p) & 1 else "0" for p in range(self.n))


def xor_add(a: BitVector, b: BitVector) -> BitVector:
    """Componentwise XOR (the group operation of F_2^n)."""
    return a ^ b


def lex_compare(a: BitVector, b: BitVector) -> int:
    """Compare reading coordinates 1..n, 0 before 1; returns -1, 0 or 1.

    Coordinate 1 is the most significant position.  The first differing
    coordinate is the lowest set bit of the XOR, which keeps this O(1).
    """
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    diff = a.bits ^ b.bits
    if diff == 0:
        return 0
    low = diff & -diff
    return -1 if (a.bits & low) == 0 else 1


def lex_min(a: BitVector, b: BitVector) -> BitVector:
    return a if lex_compare(a, b) <= 0 else b


@dataclass(frozen=True)
class EchelonBasis:
    """Reduced row-echelon basis of a GF(2) span.

    Every pivot column contains exactly one set bit across the rows, rows
    are ordered by pivot, and `free_columns` is the complement of `pivots`
    in 1..n.
    """

    n: int
    rows: tuple[BitVector, ...]
    pivots: tuple[int, ...]
    free_columns: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)


def reduce_echelon(vectors: Sequence[BitVector]) -> EchelonBasis:
    """Reduced row-echelon basis of span(vectors), pivot = smallest index.

    Zero vectors are dropped; the result is deterministic and independent
    of the input order.
    """
    if not vectors:
        raise ValueError("need at least one vector to fix the length")
    n = vectors[0].n
    for v in vectors:
        if v.n != n:
            raise ValueError(f"length mismatch: {v.n} vs {n}")
    work = [v.bits for v in vectors if v.bits]
    rank = 0
    pivots: list[int] = []
    for col in range(n):
        piv = next((i for i in range(rank, len(work)) if (work[i] >> col) & 1), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] >> col) & 1:
                work[i] ^= work[rank]
        pivots.append(col + 1)
        rank += 1
    rows = tuple(BitVector(n, b) for b in work[:rank])
    pivot_set = set(pivots)
    free = tuple(c for c in range(1, n + 1) if c not in pivot_set)
    return EchelonBasis(n=n, rows=rows, pivots=tuple(pivots), free_columns=free)


def canonical_rep(x: BitVector, basis: EchelonBasis) -> BitVector:
    """Unique member of x + span(basis) with zeros in all pivot columns.

    Two inputs map to the same output iff they lie in the same coset.
    """
    if x.n != basis.n:
        raise ValueError(f"length mismatch: {x.n} vs {basis.n}")
    y = x.bits
    for row, p in zip(basis.rows, basis.pivots):
        if (y >> (p - 1)) & 1:
            y ^= row.bits
    return BitVector(x.n, y)


def in_span(x: BitVector, basis: EchelonBasis) -> bool:
    return canonical_rep(x, basis).bits == 0
