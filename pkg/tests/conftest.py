"""Shared brute-force oracles, independent of the package internals.

Everything here works on plain ints (bit i-1 holds coordinate i) and uses
naive enumeration or textbook elimination, so expected values never flow
through the code paths under test.
"""

from __future__ import annotations

from itertools import combinations

import pytest

from ldpcbounds import GeneratorConfig, generate_code


def oracle_rank(rows: list[int], n_cols: int) -> int:
    """GF(2) rank by straightforward elimination on int bitsets."""
    work = [r for r in rows if r]
    rank = 0
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank


def oracle_in_span(vec: int, rows: list[int], n_cols: int) -> bool:
    return oracle_rank(rows + [vec], n_cols) == oracle_rank(rows, n_cols)


def oracle_dual_elements(spanning: list[int]) -> set[int]:
    """All XOR combinations of the spanning vectors (brute force)."""
    out = {0}
    for v in spanning:
        out |= {x ^ v for x in out}
    return out


def oracle_coset_min_weights(n: int, spanning: list[int]) -> dict[int, int]:
    """Min Hamming weight per coset, keyed by the smallest coset member."""
    dual = oracle_dual_elements(spanning)
    result: dict[int, int] = {}
    for x in range(1 << n):
        members = [x ^ d for d in dual]
        key = min(members)
        if key not in result:
            result[key] = min(m.bit_count() for m in members)
    return result


def oracle_sphere_profile(n: int, spanning: list[int]) -> tuple[int, ...]:
    weights = oracle_coset_min_weights(n, spanning)
    prof = [0] * (max(weights.values()) + 1)
    for wt in weights.values():
        prof[wt] += 1
    return tuple(prof)


def oracle_lex_less(a: int, b: int, n: int) -> bool:
    """String comparison of the bit patterns, coordinate 1 leftmost."""
    sa = "".join("1" if (a >> p) & 1 else "0" for p in range(n))
    sb = "".join("1" if (b >> p) & 1 else "0" for p in range(n))
    return sa < sb


def oracle_coset_leader(n: int, spanning: list[int], x: int) -> int:
    dual = oracle_dual_elements(spanning)
    members = sorted(x ^ d for d in dual)
    best_w = min(m.bit_count() for m in members)
    candidates = [m for m in members if m.bit_count() == best_w]
    best = candidates[0]
    for c in candidates[1:]:
        if oracle_lex_less(c, best, n):
            best = c
    return best


def random_codes(count: int, seed: int, n_range=(6, 12), w_options=(3,)):
    """Small seeded random codes for oracle comparisons."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        w = rng.choice(list(w_options))
        m_min = -(-n // w)
        m = rng.randint(m_min, max(m_min, n - 2))
        out.append(generate_code(GeneratorConfig(n=n, w=w, m=m, seed=rng.getrandbits(32))))
    return out


@pytest.fixture
def example5():
    """The five-coordinate worked example used throughout."""
    from ldpcbounds import from_supports

    return from_supports(5, 3, [(1, 2, 3), (3, 4), (2, 5)])


@pytest.fixture
def quad4():
    """n=4 with the single all-ones spanning vector."""
    from ldpcbounds import from_supports

    return from_supports(4, 4, [(1, 2, 3, 4)])
