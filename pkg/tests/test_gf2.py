import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldpcbounds.gf2 import (
    BitVector,
    canonical_rep,
    in_span,
    lex_compare,
    reduce_echelon,
    xor_add,
)

from conftest import oracle_in_span, oracle_lex_less, oracle_rank


def bv(s: str) -> BitVector:
    return BitVector.from_string(s)


class TestBitVector:
    def test_xor_example(self):
        assert str(bv("11100") ^ bv("00110")) == "11010"

    def test_xor_self_inverse(self):
        v = bv("10110")
        assert (v ^ v).bits == 0

    def test_xor_identity(self):
        v = bv("10110")
        assert xor_add(v, BitVector.zero(5)) == v

    def test_xor_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            bv("101") ^ bv("10")

    def test_string_round_trip(self):
        for s in ("0", "1", "10100", "0001"):
            assert str(bv(s)) == s

    def test_support_sorted_1_based(self):
        assert bv("11100").support() == (1, 2, 3)
        assert bv("01001").support() == (2, 5)
        assert BitVector.from_support(5, [5, 2]).support() == (2, 5)

    def test_unit(self):
        assert BitVector.unit(5, 1) == bv("10000")
        assert BitVector.unit(5, 5) == bv("00001")

    def test_validation(self):
        with pytest.raises(ValueError):
            BitVector(0, 0)
        with pytest.raises(ValueError):
            BitVector(3, 8)
        with pytest.raises(ValueError):
            BitVector.from_support(4, [1, 1])
        with pytest.raises(ValueError):
            BitVector.from_support(4, [5])

    def test_large_n(self):
        v = BitVector.unit(300, 300)
        assert v.weight() == 1
        assert v.support() == (300,)

    @given(st.integers(1, 60), st.data())
    @settings(max_examples=60, deadline=None)
    def test_weight_parity(self, n, data):
        a = data.draw(st.integers(0, (1 << n) - 1))
        b = data.draw(st.integers(0, (1 << n) - 1))
        va, vb = BitVector(n, a), BitVector(n, b)
        assert (va ^ vb).weight() % 2 == (va.weight() + vb.weight()) % 2


class TestLexOrder:
    def test_examples(self):
        assert lex_compare(bv("00001"), bv("01000")) == -1
        assert lex_compare(bv("00010"), bv("00100")) == -1
        v = bv("01010")
        assert lex_compare(v, v) == 0
        assert lex_compare(bv("01000"), bv("00001")) == 1

    @given(st.integers(1, 24), st.data())
    @settings(max_examples=100, deadline=None)
    def test_matches_string_order(self, n, data):
        a = data.draw(st.integers(0, (1 << n) - 1))
        b = data.draw(st.integers(0, (1 << n) - 1))
        got = lex_compare(BitVector(n, a), BitVector(n, b))
        if a == b:
            assert got == 0
        elif oracle_lex_less(a, b, n):
            assert got == -1
        else:
            assert got == 1


class TestEchelon:
    def test_example_rank3(self):
        basis = reduce_echelon([bv("11100"), bv("00110"), bv("01001")])
        assert basis.rank == 3
        assert basis.pivots == (1, 2, 3)
        assert basis.free_columns == (4, 5)

    def test_duplicate_rows(self):
        basis = reduce_echelon([bv("11000"), bv("11000")])
        assert basis.rank == 1

    def test_zero_rows_dropped(self):
        basis = reduce_echelon([BitVector.zero(4), BitVector.zero(4)])
        assert basis.rank == 0
        assert basis.free_columns == (1, 2, 3, 4)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            reduce_echelon([])

    def test_pivot_columns_are_unit(self):
        basis = reduce_echelon([bv("11100"), bv("00110"), bv("01001")])
        for p in basis.pivots:
            assert sum(r.get(p) for r in basis.rows) == 1

    @given(st.integers(2, 10), st.data())
    @settings(max_examples=60, deadline=None)
    def test_rank_matches_oracle_and_permutation_invariant(self, n, data):
        vecs = data.draw(
            st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=6)
        )
        perm = data.draw(st.permutations(vecs))
        rows = [BitVector(n, v) for v in vecs]
        rows_p = [BitVector(n, v) for v in perm]
        assert reduce_echelon(rows).rank == oracle_rank(vecs, n)
        assert reduce_echelon(rows).rank == reduce_echelon(rows_p).rank

    @given(st.integers(2, 10), st.data())
    @settings(max_examples=60, deadline=None)
    def test_span_preserved(self, n, data):
        vecs = data.draw(
            st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=5)
        )
        basis = reduce_echelon([BitVector(n, v) for v in vecs])
        # every original vector reduces to zero against the basis
        for v in vecs:
            assert in_span(BitVector(n, v), basis)
        # and the basis rows lie in the original span
        for row in basis.rows:
            assert oracle_in_span(row.bits, vecs, n)


class TestCanonicalRep:
    def test_span_maps_to_zero(self):
        basis = reduce_echelon([bv("11100"), bv("00110"), bv("01001")])
        assert canonical_rep(bv("11100"), basis).bits == 0
        assert canonical_rep(bv("11010"), basis).bits == 0  # 11100 ^ 00110

    def test_idempotent(self):
        basis = reduce_echelon([bv("11100"), bv("00110")])
        x = bv("10101")
        once = canonical_rep(x, basis)
        assert canonical_rep(once, basis) == once

    def test_same_coset_same_rep(self):
        basis = reduce_echelon([bv("11100"), bv("00110"), bv("01001")])
        assert canonical_rep(bv("10000"), basis) == canonical_rep(bv("01100"), basis)

    def test_pivot_columns_zeroed(self):
        basis = reduce_echelon([bv("11100"), bv("00110"), bv("01001")])
        rep = canonical_rep(bv("10101"), basis)
        for p in basis.pivots:
            assert rep.get(p) == 0

    @given(st.integers(2, 10), st.data())
    @settings(max_examples=80, deadline=None)
    def test_rep_equality_iff_same_coset(self, n, data):
        vecs = data.draw(
            st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=5)
        )
        x = data.draw(st.integers(0, (1 << n) - 1))
        y = data.draw(st.integers(0, (1 << n) - 1))
        basis = reduce_echelon([BitVector(n, v) for v in vecs])
        same_rep = canonical_rep(BitVector(n, x), basis) == canonical_rep(
            BitVector(n, y), basis
        )
        assert same_rep == oracle_in_span(x ^ y, vecs, n)
