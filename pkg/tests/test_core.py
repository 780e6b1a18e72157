import json
import random
from fractions import Fraction

import pytest
from conftest import random_composition, random_square
from hypothesis import given
from hypothesis import strategies as st
from oracles import ORDER8_AMALGAMATED, amalgamated_counts, outline_ok, tally

from subsq.core import (
    LatinSquare,
    OutlineRectangle,
    ParseError,
    Partition,
    Realization,
    SixthCount,
    outline_from_json,
    outline_to_json,
    parse_partition,
    partition_from_json,
    partition_to_json,
    reduce,
    square_from_json,
    square_from_text,
    square_to_json,
    square_to_text,
)


class TestPartition:
    def test_basic(self):
        P = Partition((3, 2, 1, 1, 1))
        assert P.n == 8 and P.k == 5 and P.offsets() == [0, 3, 5, 6, 7]
        assert str(P) == "3,2,1,1,1"

    @pytest.mark.parametrize("parts", [(), (0,), (1, 2), (2, -1)])
    def test_rejects(self, parts):
        with pytest.raises(ValueError):
            Partition(parts)

    def test_parse(self):
        assert parse_partition("3, 2,1 1,1").parts == (3, 2, 1, 1, 1)
        for bad in ("", "a,b", "1,2"):
            with pytest.raises(ParseError):
                parse_partition(bad)

    def test_json_roundtrip(self):
        P = Partition((4, 4, 2))
        assert partition_from_json(partition_to_json(P)) == P


class TestSixthCount:
    def test_from_fraction(self):
        assert SixthCount.from_fraction(Fraction(31, 3)).numerator_sixths == 62
        with pytest.raises(ValueError):
            SixthCount.from_fraction(Fraction(1, 4))
        with pytest.raises(ValueError):
            SixthCount(-1)

    def test_subtraction_guard(self):
        with pytest.raises(ValueError):
            SixthCount(1) - SixthCount(2)

    @given(st.integers(0, 10_000), st.integers(0, 10_000))
    def test_arithmetic(self, a, b):
        x, y = SixthCount(a), SixthCount(b)
        assert (x + y).as_fraction() == Fraction(a + b, 6)
        if a >= b:
            assert (x - y).as_fraction() == Fraction(a - b, 6)
        f, r = x.split()
        assert f == x.floor() and r == x.frac()
        assert r.numerator_sixths < 6
        assert Fraction(f) + r.as_fraction() == x.as_fraction()
        assert x.is_integer() == (a % 6 == 0)


class TestLatinSquare:
    def test_rejects_repeat(self):
        with pytest.raises(ParseError):
            square_from_text("1 1\n2 2\n")
        with pytest.raises(ValueError):
            LatinSquare(((1, 1), (2, 2)))

    def test_text_roundtrip(self, order8):
        text = square_to_text(order8)
        assert square_from_text(text) == order8
        with pytest.raises(ParseError):
            square_from_text(text.rstrip("\n"))

    def test_json_roundtrip(self, order8):
        P = Partition((3, 2, 1, 1, 1))
        sq, part = square_from_json(square_to_json(order8, P))
        assert sq == order8 and part == P
        assert json.loads(square_to_json(order8))["n"] == 8

    def test_cyclic(self):
        assert LatinSquare.cyclic(7).n == 7

    def test_realization(self, order8):
        Realization(order8, Partition((3, 2, 1, 1, 1)))
        with pytest.raises(ValueError):
            Realization(LatinSquare.cyclic(8), Partition((3, 2, 1, 1, 1)))


class TestReduce:
    def test_order8(self, order8):
        O = reduce(order8, (5, 2, 1), (4, 2, 2), (3, 3, 1, 1))
        want = amalgamated_counts(ORDER8_AMALGAMATED, (5, 2, 1), (4, 2, 2), 4)
        assert [[list(c) for c in row] for row in O.counts] == want

    def test_unit_blocks(self, order8):
        ones = (1,) * 8
        O = reduce(order8, ones, ones, ones)
        for r in range(8):
            for c in range(8):
                cell = O.counts[r][c]
                assert sum(cell) == 1 and cell[order8.grid[r][c] - 1] == 1

    def test_total_block(self, order8):
        O = reduce(order8, (8,), (8,), (8,))
        assert O.counts == (((64,),),)

    def test_order_mismatch(self, order8):
        with pytest.raises(ValueError):
            reduce(order8, (4, 3), (8,), (8,))

    @pytest.mark.parametrize("seed", range(30))
    def test_random_matches_tally(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 14)
        L = random_square(n, rng)
        P, Q, R = (random_composition(n, rng) for _ in range(3))
        O = reduce(L, P, Q, R)
        want = tally(L.grid, P, Q, R)
        assert [[list(c) for c in row] for row in O.counts] == want
        assert outline_ok(P, Q, R, want)

    def test_outline_json_roundtrip(self):
        rng = random.Random(10)
        L = random_square(10, rng)
        O = reduce(L, (4, 3, 3), (5, 5), (2, 2, 6))
        assert outline_from_json(outline_to_json(O)) == O


class TestOutlineRectangle:
    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            OutlineRectangle((2,), (1, 1), (1, 1), [[[2, 0], [0, 2]]])

    def test_pure_diagonal(self):
        L = LatinSquare(((1, 3, 2), (3, 2, 1), (2, 1, 3)))
        O = reduce(L, (1, 1, 1), (1, 1, 1), (1, 1, 1))
        assert O.has_pure_diagonal()
        assert O.cell(0, 1) == {3: 1}
        assert not reduce(LatinSquare.cyclic(3), (1, 1, 1), (1, 1, 1), (1, 1, 1)).has_pure_diagonal()

    def test_bad_json(self):
        with pytest.raises(ParseError):
            outline_from_json("[1,2]")
        with pytest.raises(ParseError):
            outline_from_json('{"P": [1]}')
