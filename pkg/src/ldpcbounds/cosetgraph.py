"""Exact analysis of the coset leader graph F_2^n / C-dual.

The graph has one vertex per coset and edges x+C -> x+e_j+C for j = 1..n
(a multigraph when e_i + e_j lies in the dual; parallel edges are counted
with multiplicity in neighbor counts).  BFS distance from the zero coset
equals the minimum Hamming weight over the coset, which is what the table
stores: one byte per coset.

Everything here is exact and desk-scale: explicit resource errors instead
of approximation once 2^code_dim or 2^dual_dim outgrow the caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .codes import LinearCode
from .gf2 import BitVector, canonical_rep

CODE_DIM_CAP = 26  # coset table: one byte per coset, <= 64 MiB
DUAL_DIM_CAP = 26  # per-coset enumeration
FULL_ENUM_CAP = 24  # whole-space sweeps over all 2^n vectors

_BFS_CHUNK = 1 << 20


class ResourceLimitError(RuntimeError):
    """A computation would exceed the desk-scale caps."""


def _require(kind: str, dim: int, cap: int) -> None:
    if dim > cap:
        raise ResourceLimitError(f"{kind} needs 2^{dim} entries, cap is 2^{cap}")


@dataclass(frozen=True)
class CosetTable:
    """BFS-complete description of the coset leader graph.

    `leader_weight[c]` is the leader weight of the coset whose canonical
    representative has free-column bit pattern c.  `generator_images` are
    the coset ids of e_1..e_n.
    """

    code: LinearCode
    generator_images: tuple[int, ...]
    leader_weight: np.ndarray

    @property
    def coset_count(self) -> int:
        return len(self.leader_weight)

    @cached_property
    def sphere_sizes(self) -> tuple[int, ...]:
        """Coset counts per leader weight: S_0, S_1, ..., S_diam."""
        counts = np.bincount(self.leader_weight)
        return tuple(int(c) for c in counts)


def coset_index(code: LinearCode, x: BitVector) -> int:
    """Coset id of x: the free-column bit pattern of its canonical rep."""
    basis = code.dual_basis
    rep = canonical_rep(x, basis).bits
    idx = 0
    for t, col in enumerate(basis.free_columns):
        if (rep >> (col - 1)) & 1:
            idx |= 1 << t
    return idx


def index_rep(code: LinearCode, idx: int) -> BitVector:
    """Canonical representative of the coset with the given id."""
    basis = code.dual_basis
    if not 0 <= idx < (1 << len(basis.free_columns)):
        raise ValueError(f"coset id {idx} out of range")
    bits = 0
    for t, col in enumerate(basis.free_columns):
        if (idx >> t) & 1:
            bits |= 1 << (col - 1)
    return BitVector(code.n, bits)


def build_table(code: LinearCode) -> CosetTable:
    """BFS over all cosets from the zero coset, filling leader weights."""
    k = code.code_dim
    _require("coset table", k, CODE_DIM_CAP)
    if code.n > 255:
        raise ResourceLimitError(f"leader weights are 8-bit; n = {code.n} > 255")
    images = tuple(
        coset_index(code, BitVector.unit(code.n, j)) for j in range(1, code.n + 1)
    )
    count = 1 << k
    lw = np.full(count, 255, dtype=np.uint8)
    lw[0] = 0
    gens = np.unique(np.array([g for g in images if g != 0], dtype=np.int64))
    frontier = np.array([0], dtype=np.int64)
    dist = 0
    while frontier.size:
        found = []
        for start in range(0, frontier.size, _BFS_CHUNK):
            block = frontier[start : start + _BFS_CHUNK]
            for g in gens:
                nb = block ^ g
                new = nb[lw[nb] == 255]
                if new.size:
                    lw[new] = dist + 1
                    found.append(new)
        frontier = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
        dist += 1
    assert not np.any(lw == 255) or code.n < 255, "BFS left unreachable cosets"
    lw.setflags(write=False)
    return CosetTable(code=code, generator_images=images, leader_weight=lw)


def diameter(table: CosetTable) -> int:
    return int(table.leader_weight.max())


def ball_size(table: CosetTable, r: int) -> int:
    """Number of cosets with leader weight at most r."""
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    return int(np.count_nonzero(table.leader_weight <= r))


def exact_leader_probability(table: CosetTable, rho: float) -> float:
    """Probability that a Bernoulli(rho) vector equals its coset's leader.

    Exactly sum over cosets of rho^l (1-rho)^(n-l) with l the leader
    weight; there is one leader per coset, so this needs only the sphere
    sizes.
    """
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    n = table.code.n
    total = 0.0
    for r, count in enumerate(table.sphere_sizes):
        if count:
            total += count * (rho**r) * ((1.0 - rho) ** (n - r))
    return total


def next_sphere_neighbor_count(table: CosetTable, coset_id: int) -> int:
    """Edges from a coset into the next sphere, with multiplicity over j."""
    if not 0 <= coset_id < table.coset_count:
        raise ValueError(f"coset id {coset_id} out of range")
    lw = table.leader_weight
    here = int(lw[coset_id])
    return sum(1 for g in table.generator_images if lw[coset_id ^ g] == here + 1)


def next_sphere_neighbor_counts(table: CosetTable) -> np.ndarray:
    """Vectorized next_sphere_neighbor_count for every coset."""
    lw = table.leader_weight
    ids = np.arange(table.coset_count, dtype=np.int64)
    target = lw.astype(np.int16) + 1
    counts = np.zeros(table.coset_count, dtype=np.int32)
    for g in table.generator_images:
        counts += lw[ids ^ g] == target
    return counts


def iter_coset_bits(code: LinearCode, x: BitVector):
    """Yield the bit patterns of all members of x + dual, Gray-code order."""
    rows = [r.bits for r in code.dual_basis.rows]
    y = x.bits
    yield y
    for i in range(1, 1 << len(rows)):
        y ^= rows[(i & -i).bit_length() - 1]
        yield y


def coset_leader(code: LinearCode, x: BitVector) -> BitVector:
    """Minimum-weight member of x + dual, ties broken lexicographically."""
    _require("coset enumeration", code.dual_dim, DUAL_DIM_CAP)
    if x.n != code.n:
        raise ValueError(f"length mismatch: {x.n} vs {code.n}")
    best = None
    best_w = code.n + 1
    for y in iter_coset_bits(code, x):
        wy = y.bit_count()
        if wy > best_w:
            continue
        if wy < best_w:
            best, best_w = y, wy
            continue
        diff = y ^ best
        if diff and (y & (diff & -diff)) == 0:
            best = y
    return BitVector(code.n, best)


def is_min_weight_in_coset(code: LinearCode, x: BitVector) -> bool:
    """True iff no member of x + dual has strictly smaller weight."""
    _require("coset enumeration", code.dual_dim, DUAL_DIM_CAP)
    if x.n != code.n:
        raise ValueError(f"length mismatch: {x.n} vs {code.n}")
    wx = x.weight()
    return all(y.bit_count() >= wx for y in iter_coset_bits(code, x))


def full_space_coset_ids(table: CosetTable) -> np.ndarray:
    """Coset id of every x in 0..2^n-1 (x read as its bit pattern).

    Built by doubling: the id map is linear over GF(2), so prefix blocks
    extend by XOR with one generator image at a time.
    """
    n = table.code.n
    _require("full-space sweep", n, FULL_ENUM_CAP)
    ids = np.zeros(1 << n, dtype=np.int64)
    for j, g in enumerate(table.generator_images):
        half = 1 << j
        ids[half : 2 * half] = ids[:half] ^ g
    return ids


def full_space_weights(n: int) -> np.ndarray:
    """Hamming weight of every x in 0..2^n-1, as uint8."""
    _require("full-space sweep", n, FULL_ENUM_CAP)
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.uint8)
