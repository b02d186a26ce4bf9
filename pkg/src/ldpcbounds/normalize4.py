"""Structural normalization of coset representatives for w = 4 duals.

Every coset has a representative whose support meets each j-tuple of
class j in at most floor(j/2) coordinates (j = 2, 3, 4) and, after the
singleton-elimination step, misses class 1 entirely.  The normalization
never increases weight and never leaves the coset, which turns it into a
diameter bound and an exact upper bound on the probability that a random
vector is a structured minimum-weight representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .codes import LinearCode
from .cosetgraph import CosetTable, full_space_coset_ids, full_space_weights
from .gf2 import BitVector
from .partition import Partition


def pair_cap_probability(rho: float) -> float:
    """P(Binomial(2, rho) <= 1) = 1 - rho^2."""
    return 1.0 - rho * rho


def triple_cap_probability(rho: float) -> float:
    """P(Binomial(3, rho) <= 1)."""
    return (1 - rho) ** 3 + 3 * rho * (1 - rho) ** 2


def quad_cap_probability(rho: float) -> float:
    """P(Binomial(4, rho) <= 2)."""
    return (1 - rho) ** 4 + 4 * rho * (1 - rho) ** 3 + 6 * rho**2 * (1 - rho) ** 2


def _require_w4(part: Partition) -> None:
    if part.w != 4:
        raise ValueError(f"need a 4-class partition, got w = {part.w}")


@lru_cache(maxsize=256)
def _tuple_sources(part: Partition, code: LinearCode, k: int) -> tuple[tuple[int, int], ...]:
    """(tuple mask, source vector bits) pairs at level k, increasing min coord."""
    out = []
    for t in sorted(part.tuples_at(k), key=lambda t: t.coords[0]):
        mask = 0
        for i in t.coords:
            mask |= 1 << (i - 1)
        out.append((mask, code.dual_spanning[t.source - 1].bits))
    return tuple(out)


def eliminate_class1(u: BitVector, part: Partition, code: LinearCode) -> BitVector:
    """Member of u + dual whose support misses class 1.

    Each class-1 coordinate came from a source vector that touches class 1
    only there, so adding that source clears the coordinate without
    disturbing the rest of class 1.  Idempotent.
    """
    _require_w4(part)
    source_of = {t.coords[0]: t.source for t in part.tuples_at(1)}
    class1 = part.classes[0]
    bits = u.bits
    for i in sorted(class1):
        if (bits >> (i - 1)) & 1:
            if i not in source_of:
                raise ValueError(f"partition lacks provenance for singleton {i}")
            bits ^= code.dual_spanning[source_of[i] - 1].bits
    out = BitVector(u.n, bits)
    assert all(out.get(i) == 0 for i in class1)
    return out


def normalize_representative(
    u: BitVector,
    part: Partition,
    code: LinearCode,
    single_pass: bool = False,
) -> BitVector:
    """Same-coset representative obeying the tuple intersection caps.

    Three steps, each adding dual vectors: clear fully-contained class-2
    pairs, fix class-3 triples hit twice or more, flip class-4 tuples hit
    three or four times.  Weight never increases, the class-1 slice of the
    support never changes, and each step preserves what the earlier steps
    established.

    The pair step re-scans until no contained pair remains; pass
    single_pass=True for the literal one-scan variant (the two agree, the
    verification suite reports if they ever differ).
    """
    _require_w4(part)
    if u.n != part.n:
        raise ValueError(f"length mismatch: {u.n} vs {part.n}")
    class1_mask = 0
    for i in part.classes[0]:
        class1_mask |= 1 << (i - 1)
    start_weight = u.weight()
    start_class1 = u.bits & class1_mask

    pairs = _tuple_sources(part, code, 2)
    triples = _tuple_sources(part, code, 3)
    quads = _tuple_sources(part, code, 4)
    bits = u.bits

    # step 1: contained class-2 pairs
    max_rounds = 1 if single_pass else 1 << len(pairs)
    rounds = 0
    while True:
        fired = False
        for mask, src in pairs:
            if (bits & mask) == mask:
                bits ^= src
                fired = True
        rounds += 1
        if single_pass or not fired:
            break
        if rounds > max_rounds:
            raise RuntimeError("pair elimination failed to reach a fixpoint")
    if not single_pass:
        assert all((bits & m) != m for m, _ in pairs)
    wt = bits.bit_count()
    assert wt <= start_weight
    assert (bits & class1_mask) == start_class1

    # step 2: class-3 triples hit at least twice
    for mask, src in triples:
        if (bits & mask).bit_count() >= 2:
            bits ^= src
    assert single_pass or all((bits & m) != m for m, _ in pairs)
    assert all((bits & m).bit_count() <= 1 for m, _ in triples)
    assert bits.bit_count() <= wt
    assert (bits & class1_mask) == start_class1
    wt = bits.bit_count()

    # step 3: class-4 tuples hit three or four times; here the source
    # vector is exactly the tuple indicator
    for mask, src in quads:
        assert src == mask
        if (bits & mask).bit_count() >= 3:
            bits ^= src
    assert all((bits & m).bit_count() <= 1 for m, _ in triples)
    assert all((bits & m).bit_count() <= 2 for m, _ in quads)
    assert bits.bit_count() <= wt
    assert (bits & class1_mask) == start_class1
    return BitVector(u.n, bits)


def satisfies_caps(bits: int, part: Partition, include_class1: bool = False) -> bool:
    """True iff each class-j tuple meets the support in <= floor(j/2) coords."""
    if include_class1:
        for i in part.classes[0]:
            if (bits >> (i - 1)) & 1:
                return False
    for k in (2, 3, 4):
        for m in part.tuple_masks(k):
            if (bits & m).bit_count() > k // 2:
                return False
    return True


def diameter_bound(part: Partition) -> float:
    """|I_2|/2 + |I_3|/3 + |I_4|/2; an integer for partition-derived sizes."""
    _require_w4(part)
    s = part.class_sizes()
    return s[1] / 2 + s[2] / 3 + s[3] / 2


@dataclass(frozen=True)
class AlphaProfile:
    """Class-size fractions (a1, a2, a3, a4), summing to one."""

    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self) -> None:
        total = self.a1 + self.a2 + self.a3 + self.a4
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"fractions sum to {total}, expected 1")
        if min(self.a1, self.a2, self.a3, self.a4) < 0:
            raise ValueError("fractions must be nonnegative")

    @classmethod
    def from_partition(cls, part: Partition) -> "AlphaProfile":
        _require_w4(part)
        s = part.class_sizes()
        return cls(*(x / part.n for x in s))


def structure_probability(rho: float, alphas: AlphaProfile, n: float) -> float:
    """log2 probability that a Bernoulli(rho) vector obeys all tuple caps.

    The caps on distinct tuples are independent events, so the probability
    is a product of per-tuple binomial tails.
    """
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    out = 0.0
    if alphas.a4 > 0:
        out += (alphas.a4 * n / 4) * math.log2(quad_cap_probability(rho))
    if alphas.a3 > 0:
        out += (alphas.a3 * n / 3) * math.log2(triple_cap_probability(rho))
    if alphas.a2 > 0:
        out += (alphas.a2 * n / 2) * math.log2(pair_cap_probability(rho))
    return out


def quad_base_dominates(rho: float) -> bool:
    """True iff the per-coordinate quad factor beats the triple and pair ones.

    This is what makes shifting class mass into class 4 optimal in the
    structured-probability maximization.
    """
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    lhs = quad_cap_probability(rho) ** 0.25
    rhs = max(triple_cap_probability(rho) ** (1 / 3), pair_cap_probability(rho) ** 0.5)
    return lhs >= rhs - 1e-12


def max_structure_probability(
    rho: float,
    n: float,
    verify: bool = False,
    grid_step: float = 0.01,
) -> tuple[float, AlphaProfile]:
    """Maximum of the structured log2-probability over admissible profiles.

    The domain requires a2/2 + a3/3 + a4/2 >= rho (so radius rho*n stays
    within the diameter bound).  The maximizer is closed form:
    a4 = 2 rho, a2 = a3 = 0.  With verify=True a grid search over the
    constrained simplex cross-checks the closed form.
    """
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    best_alphas = AlphaProfile(a1=1.0 - 2 * rho, a2=0.0, a3=0.0, a4=2 * rho)
    best = structure_probability(rho, best_alphas, n)
    if verify:
        grid_best = -math.inf
        steps = int(round(1.0 / grid_step))
        for i2 in range(steps + 1):
            a2 = i2 * grid_step
            for i3 in range(steps + 1 - i2):
                a3 = i3 * grid_step
                for i4 in range(steps + 1 - i2 - i3):
                    a4 = i4 * grid_step
                    if a2 / 2 + a3 / 3 + a4 / 2 < rho - 1e-12:
                        continue
                    a1 = 1.0 - a2 - a3 - a4
                    val = structure_probability(
                        rho, AlphaProfile(a1=a1, a2=a2, a3=a3, a4=a4), n
                    )
                    grid_best = max(grid_best, val)
        if grid_best > best + 1e-9:
            raise AssertionError(
                f"grid search beat the closed form: {grid_best} > {best}"
            )
        on_grid = abs(2 * rho / grid_step - round(2 * rho / grid_step)) < 1e-9
        if on_grid and grid_best < best - 1e-9:
            raise AssertionError(
                f"closed form unreachable on its own grid point: {best} vs {grid_best}"
            )
    return best, best_alphas


def exact_structured_minweight_probability(
    code: LinearCode,
    table: CosetTable,
    part: Partition,
    rho: float,
) -> float:
    """Exact P(x is min-weight in its coset and obeys all tuple caps).

    Full sweep over all 2^n vectors; the tuple caps are evaluated with
    vectorized popcounts, so this is fast up to the full-enumeration cap.
    """
    _require_w4(part)
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    n = code.n
    ids = full_space_coset_ids(table)
    wts = full_space_weights(n)
    ok = wts == table.leader_weight[ids]
    xs = np.arange(1 << n, dtype=np.uint64)
    for k in (2, 3, 4):
        for m in part.tuple_masks(k):
            ok &= np.bitwise_count(xs & np.uint64(m)) <= k // 2
    weight_counts = np.bincount(wts[ok], minlength=n + 1)
    total = 0.0
    for r, cnt in enumerate(weight_counts):
        if cnt:
            total += int(cnt) * (rho**r) * ((1.0 - rho) ** (n - r))
    return total
