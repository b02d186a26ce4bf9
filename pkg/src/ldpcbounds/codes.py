"""Linear codes presented by a low-weight dual spanning set, plus file formats.

A code is given by its block length n, a weight cap w, and vectors
v_1..v_m of weight at most w spanning the dual.  The supports of the v_i
must cover every coordinate; that normalization is assumed throughout the
coset-graph and partition machinery.

Two text formats are supported: the native "coset-code v1" format and the
standard LDPC alist format (parity-check rows become spanning vectors).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property

from .gf2 import BitVector, EchelonBasis, reduce_echelon


class CodeFormatError(ValueError):
    """Raised when a code file violates the format or its invariants."""


@dataclass(frozen=True)
class LinearCode:
    """Binary linear code with dual spanned by weight-<=w vectors."""

    n: int
    w: int
    dual_spanning: tuple[BitVector, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"block length must be positive, got {self.n}")
        if self.w < 1:
            raise ValueError(f"weight cap must be positive, got {self.w}")
        if not self.dual_spanning:
            raise ValueError("need at least one spanning vector")
        object.__setattr__(self, "dual_spanning", tuple(self.dual_spanning))
        covered = 0
        for idx, v in enumerate(self.dual_spanning, start=1):
            if v.n != self.n:
                raise ValueError(f"vector {idx} has length {v.n}, expected {self.n}")
            wt = v.weight()
            if wt == 0:
                raise ValueError(f"vector {idx} is zero; zero rows are rejected")
            if wt > self.w:
                raise ValueError(f"vector {idx} has weight {wt} > w = {self.w}")
            covered |= v.bits
        if covered != (1 << self.n) - 1:
            missing = [i + 1 for i in range(self.n) if not (covered >> i) & 1]
            raise ValueError(f"coordinates not covered by any spanning vector: {missing}")

    @cached_property
    def dual_basis(self) -> EchelonBasis:
        return reduce_echelon(self.dual_spanning)

    @property
    def dual_dim(self) -> int:
        return self.dual_basis.rank

    @property
    def code_dim(self) -> int:
        return self.n - self.dual_dim

    @property
    def m(self) -> int:
        return len(self.dual_spanning)


def from_supports(n: int, w: int, supports) -> LinearCode:
    """Build a code from 1-based support lists."""
    vecs = tuple(BitVector.from_support(n, s) for s in supports)
    return LinearCode(n=n, w=w, dual_spanning=vecs)


def format_code(code: LinearCode) -> str:
    """Canonical coset-code v1 text: `n m w` then one support line per vector."""
    lines = [f"{code.n} {code.m} {code.w}"]
    for v in code.dual_spanning:
        lines.append(" ".join(str(i) for i in v.support()))
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    """Parse coset-code v1 text, rejecting malformed or non-covering input."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise CodeFormatError("empty code file")
    head = lines[0].split()
    if len(head) != 3:
        raise CodeFormatError(f"header must be 'n m w', got {lines[0]!r}")
    try:
        n, m, w = (int(t) for t in head)
    except ValueError as exc:
        raise CodeFormatError(f"non-integer header field in {lines[0]!r}") from exc
    if n < 1 or m < 1 or w < 1:
        raise CodeFormatError(f"header values must be positive: n={n} m={m} w={w}")
    if len(lines) - 1 != m:
        raise CodeFormatError(f"expected {m} support lines, found {len(lines) - 1}")
    vecs = []
    for row, ln in enumerate(lines[1:], start=1):
        try:
            idxs = [int(t) for t in ln.split()]
        except ValueError as exc:
            raise CodeFormatError(f"non-integer index on line {row + 1}: {ln!r}") from exc
        seen = set()
        for i in idxs:
            if not 1 <= i <= n:
                raise CodeFormatError(f"row {row}: coordinate {i} outside 1..{n}")
            if i in seen:
                raise CodeFormatError(f"row {row}: duplicate coordinate {i}")
            seen.add(i)
        if len(idxs) > w:
            raise CodeFormatError(f"row {row}: weight {len(idxs)} exceeds w = {w}")
        if not idxs:
            raise CodeFormatError(f"row {row}: empty support")
        vecs.append(BitVector.from_support(n, idxs))
    try:
        return LinearCode(n=n, w=w, dual_spanning=tuple(vecs))
    except ValueError as exc:
        raise CodeFormatError(str(exc)) from exc


def load_code(path) -> LinearCode:
    with open(path, "r", encoding="ascii") as fh:
        return parse_code(fh.read())


def save_code(code: LinearCode, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_code(code))


def parse_alist(text: str, w: int | None = None) -> LinearCode:
    """Import a MacKay alist parity-check matrix.

    Rows of the parity-check matrix become the dual spanning vectors.  The
    weight cap defaults to the maximum row degree.  Zero padding inside
    neighbor lists is ignored, as usual for the format.
    """
    tokens_per_line = [ln.split() for ln in text.splitlines() if ln.strip()]
    if len(tokens_per_line) < 4:
        raise CodeFormatError("alist file too short")
    try:
        n, m = int(tokens_per_line[0][0]), int(tokens_per_line[0][1])
    except (IndexError, ValueError) as exc:
        raise CodeFormatError("alist header must hold n and m") from exc
    # row neighbor lists are the last m lines
    row_lines = tokens_per_line[-m:]
    if len(row_lines) != m:
        raise CodeFormatError(f"alist file lacks {m} row lines")
    supports = []
    for row, toks in enumerate(row_lines, start=1):
        try:
            idxs = sorted({int(t) for t in toks} - {0})
        except ValueError as exc:
            raise CodeFormatError(f"alist row {row}: non-integer entry") from exc
        if not idxs:
            raise CodeFormatError(f"alist row {row}: empty parity check")
        if idxs[-1] > n:
            raise CodeFormatError(f"alist row {row}: column {idxs[-1]} outside 1..{n}")
        supports.append(idxs)
    cap = w if w is not None else max(len(s) for s in supports)
    try:
        return from_supports(n, cap, supports)
    except ValueError as exc:
        raise CodeFormatError(str(exc)) from exc


def load_alist(path, w: int | None = None) -> LinearCode:
    with open(path, "r", encoding="ascii") as fh:
        return parse_alist(fh.read(), w=w)


def fingerprint(code: LinearCode) -> str:
    """Short stable identifier of a code (hash of its canonical text)."""
    return hashlib.sha256(format_code(code).encode("ascii")).hexdigest()[:12]
