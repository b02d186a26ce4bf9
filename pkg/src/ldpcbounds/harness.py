"""Random instance generation and the exhaustive verification suites.

Each suite turns one family of structural claims into a pass/fail check
over freshly generated codes, exact at the instance sizes used here.
Violations carry the full code file text, so any failure replays from the
report alone.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .codes import LinearCode, fingerprint, format_code
from .cosetgraph import (
    CosetTable,
    ResourceLimitError,
    build_table,
    diameter,
    full_space_coset_ids,
    full_space_weights,
    next_sphere_neighbor_counts,
)
from .gf2 import BitVector
from .normalize4 import (
    diameter_bound,
    eliminate_class1,
    exact_structured_minweight_probability,
    max_structure_probability,
    normalize_representative,
    satisfies_caps,
)
from .partition import (
    Partition,
    chernoff_check,
    find_heavy_class,
    partition_coordinates,
    verify_leader_tuple_claim,
)
from .report import VerificationReport, Violation

GENERATOR_MODES = ("uniform-support", "regular-tanner")


@dataclass(frozen=True)
class GeneratorConfig:
    """One random-code request; everything downstream of `seed` is fixed."""

    n: int
    w: int
    m: int
    seed: int
    mode: str = "uniform-support"
    require_column_weight_2: bool = False

    def __post_init__(self) -> None:
        if self.n < 1 or self.w < 1:
            raise ValueError(f"n and w must be positive: n={self.n} w={self.w}")
        if self.m < math.ceil(self.n / self.w):
            raise ValueError(
                f"m={self.m} rows of weight <= {self.w} cannot cover {self.n} coordinates"
            )
        if self.mode not in GENERATOR_MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.require_column_weight_2 and self.m * min(self.w, self.n) < 2 * self.n:
            raise ValueError("column weight 2 needs m*w >= 2n")


def generate_code(config: GeneratorConfig) -> LinearCode:
    """Deterministic random code satisfying the coverage invariant."""
    rng = random.Random(config.seed)
    for _ in range(200):
        if config.mode == "uniform-support":
            supports = _draw_uniform_supports(rng, config)
        else:
            supports = _draw_tanner_supports(rng, config)
        if config.require_column_weight_2:
            degree = [0] * (config.n + 1)
            for s in supports:
                for i in s:
                    degree[i] += 1
            if any(d < 2 for d in degree[1:]):
                continue
        return LinearCode(
            n=config.n,
            w=config.w,
            dual_spanning=tuple(BitVector.from_support(config.n, s) for s in supports),
        )
    raise RuntimeError(f"generator failed to satisfy column constraint: {config}")


def _draw_uniform_supports(rng: random.Random, config: GeneratorConfig) -> list[tuple[int, ...]]:
    n, w, m = config.n, config.w, config.m
    size = min(w, n)
    rows: list[tuple[int, ...]] = []
    for _ in range(m):
        for _ in range(64):
            cand = tuple(sorted(rng.sample(range(1, n + 1), size)))
            if cand not in rows:
                break
        rows.append(cand)
    # patch trailing rows until every coordinate is covered
    for _ in range(m + 2):
        covered = set().union(*map(set, rows))
        missing = sorted(set(range(1, n + 1)) - covered)
        if not missing:
            return rows
        chunks = [tuple(missing[i : i + w]) for i in range(0, len(missing), w)]
        rows[-len(chunks) :] = chunks
    # deterministic fallback: tile everything into the trailing rows
    allc = list(range(1, n + 1))
    chunks = [tuple(allc[i : i + w]) for i in range(0, n, w)]
    rows[-len(chunks) :] = chunks
    return rows


def _draw_tanner_supports(rng: random.Random, config: GeneratorConfig) -> list[tuple[int, ...]]:
    """Configuration-model (bi)regular incidence: w stubs per row."""
    n, w, m = config.n, config.w, config.m
    edges = m * w
    base_floor = 2 if config.require_column_weight_2 else 1
    degree = [base_floor] * n
    spare = edges - base_floor * n
    if spare < 0:
        raise ValueError(f"m*w = {edges} too small for column floor {base_floor}")
    for i in range(spare):
        degree[i % n] += 1
    stubs = [i + 1 for i, d in enumerate(degree) for _ in range(d)]
    for _ in range(200):
        rng.shuffle(stubs)
        rows = [stubs[r * w : (r + 1) * w] for r in range(m)]
        if all(len(set(row)) == len(row) for row in rows) and len(
            {tuple(sorted(r)) for r in rows}
        ) == m:
            return [tuple(sorted(r)) for r in rows]
    # swap-repair: fix duplicate coordinates inside rows one swap at a time
    rows = [stubs[r * w : (r + 1) * w] for r in range(m)]
    for _ in range(10000):
        broken = [r for r in range(m) if len(set(rows[r])) < w]
        if not broken:
            break
        r = broken[0]
        dup = next(i for i in rows[r] if rows[r].count(i) > 1)
        pos = rows[r].index(dup)
        r2 = rng.randrange(m)
        p2 = rng.randrange(w)
        if r2 == r:
            continue
        if rows[r2][p2] not in rows[r] and dup not in rows[r2]:
            rows[r][pos], rows[r2][p2] = rows[r2][p2], rows[r][pos]
    if any(len(set(r)) < w for r in rows):
        raise RuntimeError(f"stub pairing failed to avoid repeats: {config}")
    return [tuple(sorted(r)) for r in rows]


def default_configs(
    count: int,
    seed: int,
    n_range: tuple[int, int],
    w_options: Sequence[int] = (3,),
    mode: str = "uniform-support",
    require_column_weight_2: bool = False,
) -> list[GeneratorConfig]:
    """Seeded batch of generator configs with mixed sizes and densities."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        w = rng.choice(list(w_options))
        m_min = math.ceil(n / w)
        if require_column_weight_2:
            m_min = max(m_min, math.ceil(2 * n / min(w, n)))
        m = rng.randint(m_min, max(m_min, n))
        out.append(
            GeneratorConfig(
                n=n, w=w, m=m, seed=rng.getrandbits(32), mode=mode,
                require_column_weight_2=require_column_weight_2,
            )
        )
    return out


# ---------------------------------------------------------------------------
# per-instance checkers (tables/partitions passed in so tests can corrupt them)


def _first_cover_masks(code: LinearCode) -> list[int]:
    """For each coordinate, the support mask of the first vector covering it."""
    masks = [0] * code.n
    for j in range(code.n):
        bit = 1 << j
        for v in code.dual_spanning:
            if v.bits & bit:
                masks[j] = v.bits
                break
    return masks


def check_sphere_growth(code: LinearCode, table: CosetTable) -> list[dict]:
    """Downhill-direction and sphere/ball growth checks for w=3 duals.

    (a) every coset has at most n - 2r edges into the next sphere;
    (b) for every minimum-weight x, the union of covering supports over
        s(x) has size >= 2|x| and stepping along any of its directions
        never increases the distance;
    (c) (r+1) S_{r+1} <= (n-2r) S_r;
    (d) S_r <= 2^r C(ceil(n/2), r), and spheres vanish beyond n/2;
    (e) |ball(r)| <= 2^(n (rho + H(2 rho)/2)) for rho = r/n <= 1/3.
    """
    n = code.n
    lw = table.leader_weight
    violations: list[dict] = []

    counts = next_sphere_neighbor_counts(table)
    cap = n - 2 * lw.astype(np.int32)
    bad = np.flatnonzero(counts > cap)
    if bad.size:
        c = int(bad[0])
        violations.append({"check": "neighbor-cap", "coset": c,
                           "count": int(counts[c]), "cap": int(cap[c])})

    ids = full_space_coset_ids(table)
    wts = full_space_weights(n)
    minmask = wts == lw[ids]

    cover = _first_cover_masks(code)
    umask = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        half = 1 << j
        umask[half : 2 * half] = umask[:half] | cover[j]
    usize = np.bitwise_count(umask.view(np.uint64)).astype(np.int16)
    bad = np.flatnonzero(minmask & (usize < 2 * wts.astype(np.int16)))
    if bad.size:
        x = int(bad[0])
        violations.append({"check": "union-size", "x": str(BitVector(n, x)),
                           "union": int(usize[x]), "weight": int(wts[x])})

    for j in range(n):
        img = table.generator_images[j]
        sel = np.flatnonzero(minmask & ((umask >> j) & 1).astype(bool))
        if not sel.size:
            continue
        there = lw[ids[sel] ^ img]
        bad = np.flatnonzero(there > wts[sel])
        if bad.size:
            x = int(sel[bad[0]])
            violations.append({"check": "downhill", "x": str(BitVector(n, x)),
                               "direction": j + 1, "weight": int(wts[x]),
                               "dest_weight": int(there[bad[0]])})
            break

    sizes = table.sphere_sizes
    for r in range(len(sizes) - 1):
        if (r + 1) * sizes[r + 1] > (n - 2 * r) * sizes[r]:
            violations.append({"check": "sphere-recursion", "r": r,
                               "S_r": sizes[r], "S_r1": sizes[r + 1]})
    half_ceil = (n + 1) // 2
    for r, s in enumerate(sizes):
        if 2 * r > n and s > 0:
            violations.append({"check": "sphere-cap", "r": r, "S_r": s,
                               "reason": "sphere beyond n/2"})
        elif s > (1 << r) * math.comb(half_ceil, min(r, half_ceil)):
            violations.append({"check": "sphere-cap", "r": r, "S_r": s,
                               "cap": (1 << r) * math.comb(half_ceil, r)})
    ball = 0
    for r, s in enumerate(sizes):
        ball += s
        rho = r / n
        if rho <= 1 / 3:
            h2 = 0.0 if rho == 0 else -2 * rho * math.log2(2 * rho) - (1 - 2 * rho) * math.log2(1 - 2 * rho)
            cap_log = n * (rho + h2 / 2)
            if math.log2(ball) > cap_log * (1 + 1e-12) + 1e-12:
                violations.append({"check": "ball-cap", "r": r, "ball": ball,
                                   "cap_log2": cap_log})
    return violations


def check_partition_invariants(code: LinearCode, rhos: Sequence[float]) -> list[dict]:
    """Partition well-formedness plus heavy-class certificates at each rho."""
    violations: list[dict] = []
    part = partition_coordinates(code)
    seen: set[int] = set()
    for k in range(1, part.w + 1):
        cls = part.classes[k - 1]
        if seen & cls:
            violations.append({"check": "disjoint", "k": k,
                               "overlap": sorted(seen & cls)})
        seen |= cls
        if len(cls) % k != 0:
            violations.append({"check": "divisibility", "k": k, "size": len(cls)})
        tuples = part.tuples_at(k)
        tiled: set[int] = set()
        for t in tuples:
            if len(t.coords) != k:
                violations.append({"check": "tuple-arity", "k": k, "U": t.coords})
            if tiled & set(t.coords):
                violations.append({"check": "tuple-overlap", "k": k, "U": t.coords})
            tiled |= set(t.coords)
            src = code.dual_spanning[t.source - 1]
            if any(src.get(i) == 0 for i in t.coords):
                violations.append({"check": "tuple-source", "k": k, "U": t.coords})
            higher = set().union(*part.classes[k:]) if k < part.w else set()
            rest = set(src.support()) - set(t.coords)
            if not rest <= higher:
                violations.append({"check": "tuple-remainder", "k": k,
                                   "U": t.coords, "rest": sorted(rest)})
        if tiled != cls:
            violations.append({"check": "tuple-tiling", "k": k,
                               "untiled": sorted(cls - tiled)})
    if seen != set(range(1, code.n + 1)):
        violations.append({"check": "coverage",
                           "missing": sorted(set(range(1, code.n + 1)) - seen)})
    sizes = part.class_sizes()
    for rho in rhos:
        try:
            cert = find_heavy_class(sizes, code.n, part.w, rho)
        except RuntimeError as exc:
            violations.append({"check": "heavy-class", "rho": rho, "error": str(exc)})
            continue
        for k in range(cert.k + 1, part.w + 1):
            tail = cert.a_factor * sum(sizes[k:])
            if sizes[k - 1] > tail and sizes[k - 1] > cert.threshold_floor:
                violations.append({"check": "heavy-class-maximal", "rho": rho,
                                   "returned": cert.k, "larger": k})
    return violations


def check_normalization(code: LinearCode, table: CosetTable, part: Partition) -> list[dict]:
    """Exhaustive class-4 normalization checks over every vector and coset."""
    violations: list[dict] = []
    n = code.n
    ids = full_space_coset_ids(table)
    wts = full_space_weights(n)
    lw = table.leader_weight
    for x in range(1 << n):
        u = BitVector(n, x)
        v = normalize_representative(u, part, code)
        v1 = normalize_representative(u, part, code, single_pass=True)
        if v1.bits != v.bits:
            violations.append({"check": "mode-divergence", "u": str(u),
                               "fixpoint": str(v), "single_pass": str(v1)})
        if ids[v.bits] != ids[x]:
            violations.append({"check": "coset-preserved", "u": str(u), "v": str(v)})
        if v.weight() > int(wts[x]):
            violations.append({"check": "weight-monotone", "u": str(u), "v": str(v)})
        if wts[x] == lw[ids[x]] and not satisfies_caps(v.bits, part):
            violations.append({"check": "minweight-caps", "u": str(u), "v": str(v)})
        if violations:
            return violations
    reps = np.flatnonzero(wts == lw[ids])  # one pass over cosets via min-weight reps
    seen = set()
    for x in map(int, reps):
        cid = int(ids[x])
        if cid in seen:
            continue
        seen.add(cid)
        u1 = eliminate_class1(BitVector(n, x), part, code)
        u2 = normalize_representative(u1, part, code)
        if ids[u2.bits] != cid:
            violations.append({"check": "full-caps-coset", "coset": cid})
        if not satisfies_caps(u2.bits, part, include_class1=True):
            violations.append({"check": "full-caps", "coset": cid, "rep": str(u2)})
        if violations:
            return violations
    return violations


def check_diameter_bound(code: LinearCode, table: CosetTable, part: Partition) -> list[dict]:
    bound = diameter_bound(part)
    diam = diameter(table)
    if diam > bound + 1e-9:
        return [{"check": "diameter", "diameter": diam, "bound": bound}]
    return []


def check_structured_probability(
    code: LinearCode, table: CosetTable, part: Partition, rhos: Sequence[float]
) -> list[dict]:
    violations = []
    ratio = diameter_bound(part) / code.n
    for rho in rhos:
        if rho > ratio + 1e-12:
            continue
        p_exact = exact_structured_minweight_probability(code, table, part, rho)
        cap_log2, _ = max_structure_probability(rho, code.n)
        if p_exact > 0 and math.log2(p_exact) > cap_log2 + 1e-9:
            violations.append({"check": "structured-probability", "rho": rho,
                               "log2_p": math.log2(p_exact), "cap_log2": cap_log2})
    return violations


# ---------------------------------------------------------------------------
# suite runner

DEFAULT_RHOS = (0.1, 0.2, 0.3, 0.4)
STRUCTURE_RHOS = tuple(round(0.05 * k, 2) for k in range(1, 10))


def _run_codes(name: str, configs: Iterable[GeneratorConfig], run_one) -> VerificationReport:
    report = VerificationReport(suite=name)
    start = time.monotonic()
    for config in configs:
        code = generate_code(config)
        report.instances += 1
        try:
            found = run_one(code)
        except ResourceLimitError as exc:
            report.skipped.append({"fingerprint": fingerprint(code), "reason": str(exc)})
            continue
        for detail in found:
            report.violations.append(
                Violation(fingerprint=fingerprint(code),
                          code_text=format_code(code), detail=detail)
            )
    report.wall_time = time.monotonic() - start
    return report


def run_suite(
    name: str,
    configs: Iterable[GeneratorConfig],
    rhos: Sequence[float] | None = None,
) -> VerificationReport:
    """Run one named verification suite over generated codes.

    Known suites: lemma31, partition, tuple-claim, chernoff, normalize4,
    diameter4, pprime4.
    """
    if name == "lemma31":
        return _run_codes(name, configs, lambda c: check_sphere_growth(c, build_table(c)))
    if name == "partition":
        r = rhos if rhos is not None else DEFAULT_RHOS
        return _run_codes(name, configs, lambda c: check_partition_invariants(c, r))
    if name == "tuple-claim":
        r = rhos if rhos is not None else DEFAULT_RHOS

        def one(code: LinearCode) -> list[dict]:
            table = build_table(code)
            part = partition_coordinates(code)
            out = []
            for rho in r:
                rep = verify_leader_tuple_claim(code, table, rho, part)
                out.extend(v.detail for v in rep.violations)
            return out

        return _run_codes(name, configs, one)
    if name == "chernoff":
        r = rhos if rhos is not None else DEFAULT_RHOS

        def one(code: LinearCode) -> list[dict]:
            table = build_table(code)
            part = partition_coordinates(code)
            out = []
            for rho in r:
                rep = chernoff_check(code, table, rho, part)
                out.extend(v.detail for v in rep.violations)
            return out

        return _run_codes(name, configs, one)
    if name == "normalize4":
        def one(code: LinearCode) -> list[dict]:
            table = build_table(code)
            part = partition_coordinates(code, w=4)
            return check_normalization(code, table, part)

        return _run_codes(name, configs, one)
    if name == "diameter4":
        def one(code: LinearCode) -> list[dict]:
            table = build_table(code)
            part = partition_coordinates(code, w=4)
            return check_diameter_bound(code, table, part)

        return _run_codes(name, configs, one)
    if name == "pprime4":
        r = rhos if rhos is not None else STRUCTURE_RHOS

        def one(code: LinearCode) -> list[dict]:
            table = build_table(code)
            part = partition_coordinates(code, w=4)
            return check_structured_probability(code, table, part, r)

        return _run_codes(name, configs, one)
    raise ValueError(f"unknown suite {name!r}")


SUITE_NAMES = ("lemma31", "partition", "tuple-claim", "chernoff",
               "normalize4", "diameter4", "pprime4")
