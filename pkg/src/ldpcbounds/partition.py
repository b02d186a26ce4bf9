"""Greedy coordinate partition, heavy-class certificates, tail estimates.

The partition assigns every coordinate to a class I_k, k = 1..w: passes run
k = w down to 1, and a spanning vector whose support has exactly k
coordinates outside everything assigned so far contributes those k
coordinates to I_k as one k-tuple.  Tuples remember their source vector,
which is what the elimination steps of the class-4 machinery rely on.

The heavy-class finder and the Chernoff-style constant turn the partition
into quantitative statements about coset-leader probabilities; the
verification entry points here check those statements exactly on small
codes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .codes import LinearCode, fingerprint, format_code
from .cosetgraph import (
    DUAL_DIM_CAP,
    CosetTable,
    ResourceLimitError,
    iter_coset_bits,
    exact_leader_probability,
    full_space_coset_ids,
    full_space_weights,
)
from .gf2 import BitVector
from .report import VerificationReport, Violation


@dataclass(frozen=True)
class TupleAssignment:
    """One k-tuple added to I_k, with its 1-based source vector index."""

    k: int
    coords: tuple[int, ...]
    source: int


@dataclass(frozen=True)
class Partition:
    """Classes I_1..I_w plus tuple provenance; classes[k-1] is I_k."""

    n: int
    w: int
    classes: tuple[frozenset[int], ...]
    tuples: tuple[TupleAssignment, ...]

    def class_sizes(self) -> tuple[int, ...]:
        """(|I_1|, ..., |I_w|)."""
        return tuple(len(c) for c in self.classes)

    def tuples_at(self, k: int) -> tuple[TupleAssignment, ...]:
        if not 1 <= k <= self.w:
            raise ValueError(f"class index {k} outside 1..{self.w}")
        return tuple(t for t in self.tuples if t.k == k)

    @cached_property
    def _masks_by_level(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, tuple[int, ...]] = {k: () for k in range(1, self.w + 1)}
        for k in range(1, self.w + 1):
            masks = []
            for t in sorted(self.tuples_at(k), key=lambda t: t.coords[0]):
                m = 0
                for i in t.coords:
                    m |= 1 << (i - 1)
                masks.append(m)
            out[k] = tuple(masks)
        return out

    def tuple_masks(self, k: int) -> tuple[int, ...]:
        """Support bit masks of the level-k tuples, increasing min coordinate."""
        if not 1 <= k <= self.w:
            raise ValueError(f"class index {k} outside 1..{self.w}")
        return self._masks_by_level[k]


def partition_coordinates(code: LinearCode, w: int | None = None) -> Partition:
    """Run the greedy pass structure over the spanning vectors.

    One pass per class, k = w down to 1, vectors in input order, with the
    current class growing during its own pass.  Every coordinate is
    assigned by the end (enforced, though it is a theorem given coverage
    and the weight cap).
    """
    w = code.w if w is None else w
    maxwt = max(v.weight() for v in code.dual_spanning)
    if w < maxwt:
        raise ValueError(f"partition width {w} below maximum vector weight {maxwt}")
    assigned = 0
    classes: list[set[int]] = [set() for _ in range(w)]
    tuples: list[TupleAssignment] = []
    for k in range(w, 0, -1):
        for src, v in enumerate(code.dual_spanning, start=1):
            outside = v.bits & ~assigned
            if outside.bit_count() == k:
                coords = BitVector(code.n, outside).support()
                classes[k - 1].update(coords)
                assigned |= outside
                tuples.append(TupleAssignment(k=k, coords=coords, source=src))
    if assigned != (1 << code.n) - 1:
        missing = [i + 1 for i in range(code.n) if not (assigned >> i) & 1]
        raise RuntimeError(f"partition left coordinates unassigned: {missing}")
    return Partition(
        n=code.n,
        w=w,
        classes=tuple(frozenset(c) for c in classes),
        tuples=tuple(tuples),
    )


def partition_to_json(part: Partition) -> dict:
    return {
        "n": part.n,
        "w": part.w,
        "I": {str(k): sorted(part.classes[k - 1]) for k in range(1, part.w + 1)},
        "tuples": [
            {"k": t.k, "U": list(t.coords), "source": t.source} for t in part.tuples
        ],
    }


def partition_from_json(data: dict) -> Partition:
    n, w = int(data["n"]), int(data["w"])
    classes = tuple(
        frozenset(int(i) for i in data["I"].get(str(k), [])) for k in range(1, w + 1)
    )
    tuples = tuple(
        TupleAssignment(k=int(t["k"]), coords=tuple(int(i) for i in t["U"]),
                        source=int(t["source"]))
        for t in data["tuples"]
    )
    return Partition(n=n, w=w, classes=classes, tuples=tuples)


@dataclass(frozen=True)
class HeavyClassCertificate:
    """A class index whose size strictly beats both heaviness thresholds."""

    k: int
    a_factor: float
    threshold_tail: float
    threshold_floor: float
    class_size: int
    rho: float
    w: int
    n: int

    def __post_init__(self) -> None:
        if not (self.class_size > self.threshold_tail and self.class_size > self.threshold_floor):
            raise ValueError("certificate does not satisfy the strict inequalities")


def find_heavy_class(sizes: Sequence[int], n: int, w: int, rho: float) -> HeavyClassCertificate:
    """Largest k with |I_k| > max(A * tail mass above k, n / (2 w A^w)).

    A = 2 / rho^w.  Existence holds for every nonnegative composition of
    n >= 1, so failure to find one indicates a precondition violation.
    """
    if w < 3:
        raise ValueError(f"need w >= 3, got {w}")
    if not 0.0 < rho < 0.5:
        raise ValueError(f"rho must lie in (0, 1/2), got {rho}")
    if len(sizes) != w:
        raise ValueError(f"expected {w} class sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise ValueError("class sizes must be nonnegative")
    if sum(sizes) != n or n < 1:
        raise ValueError(f"class sizes must sum to n = {n} >= 1")
    a_factor = 2.0 / rho**w
    assert a_factor > 2 ** (w + 1)
    floor = n / (2 * w * a_factor**w)
    for k in range(w, 0, -1):
        tail = a_factor * sum(sizes[k:])
        if sizes[k - 1] > tail and sizes[k - 1] > floor:
            return HeavyClassCertificate(
                k=k, a_factor=a_factor, threshold_tail=tail, threshold_floor=floor,
                class_size=sizes[k - 1], rho=rho, w=w, n=n,
            )
    raise RuntimeError(f"no heavy class for sizes {tuple(sizes)}; this should be impossible")


def chernoff_constant(w: int, rho: float) -> float:
    """The exponential-separation constant (log2 e / 8w^2) (rho^w / 2)^(w+1).

    Accepts rho = 1/2 so the induced distance-domain curve closes at
    delta = 0.
    """
    if w < 3:
        raise ValueError(f"need w >= 3, got {w}")
    if not 0.0 < rho <= 0.5:
        raise ValueError(f"rho must lie in (0, 1/2], got {rho}")
    return (math.log2(math.e) / (8 * w * w)) * (rho**w / 2.0) ** (w + 1)


def tuple_containment_count(part: Partition, k: int, x: BitVector) -> int:
    """Number of level-k tuples fully inside the support of x."""
    if x.n != part.n:
        raise ValueError(f"length mismatch: {x.n} vs {part.n}")
    return sum(1 for m in part.tuple_masks(k) if (x.bits & m) == m)


def verify_leader_tuple_claim(
    code: LinearCode,
    table: CosetTable,
    rho: float,
    part: Partition | None = None,
) -> VerificationReport:
    """Check that minimum-weight coset members contain few heavy-class tuples.

    For k from the heavy-class certificate and t = |I_k| / k, every
    minimum-weight element of every coset must contain at most
    (rho^k / 2) t of the level-k tuples.  All 2^n vectors are scanned, so
    this is exact; the first violation (if any) is reported.
    """
    start = time.monotonic()
    part = partition_coordinates(code) if part is None else part
    cert = find_heavy_class(part.class_sizes(), code.n, part.w, rho)
    k = cert.k
    t_count = cert.class_size // k
    bound = (rho**k / 2.0) * t_count
    ids = full_space_coset_ids(table)
    wts = full_space_weights(code.n)
    minmask = wts == table.leader_weight[ids]
    xs = np.flatnonzero(minmask).astype(np.int64)
    counts = np.zeros(xs.size, dtype=np.int64)
    for m in part.tuple_masks(k):
        counts += (xs & m) == m
    report = VerificationReport(suite="tuple-claim", instances=1)
    bad = np.flatnonzero(counts > bound)
    if bad.size:
        x = int(xs[bad[0]])
        report.violations.append(
            Violation(
                fingerprint=fingerprint(code),
                code_text=format_code(code),
                detail={
                    "x": str(BitVector(code.n, x)),
                    "contained_tuples": int(counts[bad[0]]),
                    "bound": bound,
                    "k": k,
                    "t": t_count,
                    "rho": rho,
                },
            )
        )
    report.wall_time = time.monotonic() - start
    return report


def chernoff_check(
    code: LinearCode,
    table: CosetTable,
    rho: float,
    part: Partition | None = None,
) -> VerificationReport:
    """Check exact leader probability against the exp(-rho^k t / 8) tail."""
    start = time.monotonic()
    part = partition_coordinates(code) if part is None else part
    cert = find_heavy_class(part.class_sizes(), code.n, part.w, rho)
    t_count = cert.class_size // cert.k
    p_exact = exact_leader_probability(table, rho)
    tail = math.exp(-(rho**cert.k) * t_count / 8.0)
    report = VerificationReport(suite="chernoff", instances=1)
    if p_exact > tail:
        report.violations.append(
            Violation(
                fingerprint=fingerprint(code),
                code_text=format_code(code),
                detail={"p_exact": p_exact, "tail_bound": tail, "k": cert.k,
                        "t": t_count, "rho": rho},
            )
        )
    report.wall_time = time.monotonic() - start
    return report


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    stderr: float
    ci_low: float
    ci_high: float
    hits: int
    samples: int
    rho: float
    mode: str


def montecarlo_leader_probability(
    code: LinearCode,
    rho: float,
    samples: int,
    seed: int,
    mode: str = "minweight",
) -> MonteCarloEstimate:
    """Sampled probability that a Bernoulli(rho) vector leads its coset.

    mode "minweight" counts x of minimum weight in its coset; "strict"
    additionally requires x to win the lexicographic tie-break, matching
    the one-leader-per-coset convention of the exact computation.  The
    95% interval is the normal approximation.  Deterministic given seed.
    """
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    if mode not in ("minweight", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    if code.dual_dim > DUAL_DIM_CAP:
        raise ResourceLimitError(
            f"coset enumeration needs 2^{code.dual_dim} members, cap is 2^{DUAL_DIM_CAP}"
        )
    if code.n <= 63:
        hits = _mc_vectorized(code, rho, samples, seed, mode)
    else:
        hits = _mc_scalar(code, rho, samples, seed, mode)
    p_hat = hits / samples
    stderr = math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / samples)
    half = 1.96 * stderr
    return MonteCarloEstimate(
        estimate=p_hat, stderr=stderr,
        ci_low=max(0.0, p_hat - half), ci_high=min(1.0, p_hat + half),
        hits=hits, samples=samples, rho=rho, mode=mode,
    )


def _mc_vectorized(code: LinearCode, rho: float, samples: int, seed: int, mode: str) -> int:
    rng = np.random.default_rng(seed)
    x = np.zeros(samples, dtype=np.int64)
    for j in range(code.n):
        x |= (rng.random(samples) < rho).astype(np.int64) << j
    wx = np.bitwise_count(x.view(np.uint64)).astype(np.int16)
    ok = np.ones(samples, dtype=bool)
    for d in iter_coset_bits(code, BitVector.zero(code.n)):
        if d == 0:
            continue
        y = x ^ d
        wy = np.bitwise_count(y.view(np.uint64)).astype(np.int16)
        bad = wy < wx
        if mode == "strict":
            diff = np.int64(d)
            low = diff & -diff
            bad |= (wy == wx) & ((x & low) != 0)
        ok &= ~bad
    return int(np.count_nonzero(ok))


def _mc_scalar(code: LinearCode, rho: float, samples: int, seed: int, mode: str) -> int:
    # n > 63 fallback: exact but slow, one coset sweep per sample
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        bits = 0
        draws = rng.random(code.n)
        for j in range(code.n):
            if draws[j] < rho:
                bits |= 1 << j
        wx = bits.bit_count()
        good = True
        for y in iter_coset_bits(code, BitVector(code.n, bits)):
            wy = y.bit_count()
            if wy < wx:
                good = False
                break
            if mode == "strict" and wy == wx and y != bits:
                diff = y ^ bits
                if (y & (diff & -diff)) == 0:
                    good = False
                    break
        hits += good
    return hits
