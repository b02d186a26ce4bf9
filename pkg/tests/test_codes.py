import pytest

from ldpcbounds.codes import (
    CodeFormatError,
    LinearCode,
    fingerprint,
    format_code,
    from_supports,
    parse_alist,
    parse_code,
)
from ldpcbounds.gf2 import BitVector


class TestLinearCode:
    def test_dimensions(self, example5):
        assert example5.dual_dim == 3
        assert example5.code_dim == 2
        assert example5.m == 3

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError, match="zero"):
            LinearCode(n=3, w=3, dual_spanning=(BitVector.zero(3), BitVector.unit(3, 1)))

    def test_overweight_rejected(self):
        with pytest.raises(ValueError, match="weight"):
            from_supports(4, 2, [(1, 2, 3), (4,)])

    def test_uncovered_coordinate_named(self):
        with pytest.raises(ValueError, match=r"\[4\]"):
            from_supports(4, 3, [(1, 2, 3)])

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            LinearCode(n=4, w=3, dual_spanning=(BitVector.from_string("111"),))

    def test_full_dual(self):
        code = from_supports(2, 3, [(1,), (2,)])
        assert code.dual_dim == 2
        assert code.code_dim == 0


class TestCosetCodeFormat:
    def test_round_trip(self, example5):
        text = format_code(example5)
        assert text == "5 3 3\n1 2 3\n3 4\n2 5\n"
        again = parse_code(text)
        assert format_code(again) == text

    def test_rejects_duplicate_index(self):
        with pytest.raises(CodeFormatError, match="duplicate"):
            parse_code("3 1 3\n1 1 2\n")

    def test_rejects_out_of_range(self):
        with pytest.raises(CodeFormatError, match="outside"):
            parse_code("3 1 3\n1 4\n")

    def test_rejects_overweight(self):
        with pytest.raises(CodeFormatError, match="weight"):
            parse_code("4 2 2\n1 2 3\n4\n")

    def test_rejects_uncovered_with_coordinate(self):
        with pytest.raises(CodeFormatError, match=r"\[3\]"):
            parse_code("3 1 3\n1 2\n")

    def test_rejects_bad_header(self):
        with pytest.raises(CodeFormatError):
            parse_code("5 3\n")
        with pytest.raises(CodeFormatError):
            parse_code("a b c\n")
        with pytest.raises(CodeFormatError):
            parse_code("")

    def test_rejects_wrong_row_count(self):
        with pytest.raises(CodeFormatError, match="support lines"):
            parse_code("3 2 3\n1 2 3\n")

    def test_fingerprint_stable(self, example5):
        assert fingerprint(example5) == fingerprint(parse_code(format_code(example5)))
        other = from_supports(5, 3, [(1, 2, 3), (3, 4), (4, 5)])
        assert fingerprint(other) != fingerprint(example5)


ALIST_TEXT = """\
5 3
3 3
1 2 2 2 1
3 2 3
1 0 0
1 2 0
1 2 0
2 3 0
3 0 0
1 2 3
2 3 4
3 4 5
"""


class TestAlist:
    def test_parse_rows(self):
        code = parse_alist(ALIST_TEXT)
        assert code.n == 5
        assert code.m == 3
        assert [v.support() for v in code.dual_spanning] == [
            (1, 2, 3),
            (2, 3, 4),
            (3, 4, 5),
        ]
        assert code.w == 3

    def test_explicit_weight_cap(self):
        code = parse_alist(ALIST_TEXT, w=4)
        assert code.w == 4

    def test_rejects_truncated(self):
        with pytest.raises(CodeFormatError):
            parse_alist("5 3\n")

    def test_rejects_column_out_of_range(self):
        bad = ALIST_TEXT.replace("3 4 5", "3 4 9")
        with pytest.raises(CodeFormatError, match="outside"):
            parse_alist(bad)
