import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import exists_k5_bruteforce, outline_ok, partitions_exact, y_class, y_matrix

from subsq.core import InvariantError
from subsq.rational import ConditionViolated, build_symmetric_rational
from subsq.rounding import (
    ALTERNATE_O10,
    BASE_TEMPLATES,
    CANONICAL,
    CLASS_LABELS,
    BArray,
    NoMatch,
    assemble_outline,
    build_k5,
    build_outline_k5,
    canonical_template,
    classify_graph,
    deficiency_graph,
    floor_array,
    mixes_zero_and_two,
    template_B,
    violates_rule1,
    violates_rule2,
)

IDENTITY = (0, 1, 2, 3, 4)

# Floors for (5,4,3,2,1), 1-based cell -> {symbol: count}.
FLOOR_54321 = {
    (1, 2): {3: 10, 4: 6, 5: 3}, (1, 3): {2: 10, 4: 3, 5: 1}, (1, 4): {2: 6, 3: 3, 5: 0},
    (1, 5): {2: 3, 3: 1, 4: 0}, (2, 3): {1: 10, 4: 1, 5: 0}, (2, 4): {1: 6, 3: 1, 5: 0},
    (2, 5): {1: 3, 3: 0, 4: 0}, (3, 4): {1: 3, 2: 1, 5: 1}, (3, 5): {1: 1, 2: 0, 4: 1},
    (4, 5): {1: 0, 2: 0, 3: 1},
}


def permuted(y, perm):
    out = [[0] * 5 for _ in range(5)]
    for a in range(5):
        for b in range(5):
            out[perm[a]][perm[b]] = y[a][b]
    return tuple(tuple(r) for r in out)


class TestFloorAndGraph:
    def test_floor_54321(self):
        A = floor_array(build_symmetric_rational((5, 4, 3, 2, 1)))
        for (i, j), cell in FLOOR_54321.items():
            for s, v in cell.items():
                assert A[i - 1][j - 1][s - 1] == v
                assert A[j - 1][i - 1][s - 1] == v
        assert [A[i][i][i] for i in range(5)] == [25, 16, 9, 4, 1]

    def test_floor_integer_passthrough(self):
        R = build_symmetric_rational((3, 1, 1, 1, 1))
        A = floor_array(R)
        for i in range(5):
            for j in range(5):
                for k in range(5):
                    if R.entries[i][j][k].is_integer():
                        assert A[i][j][k] == R.entries[i][j][k].as_fraction()

    @pytest.mark.parametrize("h", [(5, 4, 3, 2, 1), (1, 1, 1, 1, 1)])
    def test_all_ones_graph(self, h):
        y = deficiency_graph(build_symmetric_rational(h)).y
        assert all(y[i][j] == (i != j) for i in range(5) for j in range(5))

    def test_22211(self):
        y = deficiency_graph(build_symmetric_rational((2, 2, 2, 1, 1))).y
        for i in range(5):
            for j in range(5):
                if i != j:
                    assert y[i][j] == (1 if {i, j} == {3, 4} else 2)


class TestClassify:
    def test_identity_cases(self):
        g = classify_graph(CANONICAL["O10"])
        assert g.class_label == "O10" and g.perm == IDENTITY
        assert classify_graph(CANONICAL["Z10"]).class_label == "Z10"

    def test_22211(self):
        y = deficiency_graph(build_symmetric_rational((2, 2, 2, 1, 1)))
        g = classify_graph(y)
        assert g.class_label == "O1T9"
        assert {g.perm[0], g.perm[1]} == {3, 4}

    @pytest.mark.parametrize("label", CLASS_LABELS)
    def test_every_class_under_random_relabelling(self, label):
        rng = random.Random(label)
        for _ in range(10):
            perm = list(IDENTITY)
            rng.shuffle(perm)
            y = permuted(CANONICAL[label], perm)
            g = classify_graph(y)
            assert g.class_label == label
            assert permuted(CANONICAL[label], g.perm) == y
            assert y_class(y) == label

    def test_no_match(self):
        y = [[0 if i == j else 2 for j in range(5)] for i in range(5)]
        y[0][1] = y[1][0] = 0
        with pytest.raises(NoMatch):
            classify_graph(y)

    def test_bad_input(self):
        with pytest.raises(ValueError):
            classify_graph([[0, 1], [1, 0]])
        y = [list(r) for r in CANONICAL["O10"]]
        y[0][1] = 2
        with pytest.raises(ValueError):
            classify_graph(y)


class TestTemplates:
    @pytest.mark.parametrize("label", CLASS_LABELS)
    def test_canonical_template_contract(self, label):
        B = BArray(canonical_template(label))
        B.check(CANONICAL[label])

    def test_base_templates_are_the_five(self):
        assert set(BASE_TEMPLATES) == {"Z4O6", "Z1O9", "O10", "T1O9", "T4O6"}

    def test_alternate_o10(self):
        BArray(ALTERNATE_O10).check(CANONICAL["O10"])

    def test_examples(self):
        B = template_B("O10", IDENTITY)
        assert list(B.cells[0]) == [(), (3,), (5,), (2,), (4,)]
        B = template_B("T1O9", IDENTITY)
        assert B.cells[0][1] == (4, 5) and B.cells[1][0] == (3, 5)
        perm = (4, 2, 0, 1, 3)
        assert all(c == () for row in template_B("Z10", perm).cells for c in row)

    @pytest.mark.parametrize("label", CLASS_LABELS)
    def test_permuted_contract(self, label):
        rng = random.Random(label + "B")
        for _ in range(5):
            perm = list(IDENTITY)
            rng.shuffle(perm)
            template_B(label, perm).check(permuted(CANONICAL[label], perm))

    def test_bad_args(self):
        with pytest.raises(ValueError):
            template_B("X", IDENTITY)
        with pytest.raises(ValueError):
            template_B("O10", (0, 0, 1, 2, 3))


class TestAssemble:
    def test_54321_with_alternate(self):
        R = build_symmetric_rational((5, 4, 3, 2, 1))
        O = assemble_outline(floor_array(R), BArray(ALTERNATE_O10), (5, 4, 3, 2, 1))
        assert O.cell(0, 1) == {3: 10, 4: 7, 5: 3}

    def test_54321_shipped(self):
        O = build_outline_k5((5, 4, 3, 2, 1))
        assert [O.counts[i][i][i] for i in range(5)] == [25, 16, 9, 4, 1]
        assert O.has_pure_diagonal()
        assert O.cell(0, 1) == {3: 11, 4: 6, 5: 3}

    def test_all_ones(self):
        O = build_outline_k5((1, 1, 1, 1, 1))
        for i in range(5):
            assert O.cell(i, i) == {i + 1: 1}
            for j in range(5):
                assert sum(O.counts[i][j]) == 1

    def test_32111(self):
        O = build_outline_k5((3, 2, 1, 1, 1))
        assert O.cell(0, 0) == {1: 9}

    def test_violating(self):
        with pytest.raises(ConditionViolated):
            build_outline_k5((4, 1, 1, 1, 1))

    def test_wrong_completion_rejected(self):
        R = build_symmetric_rational((2, 2, 2, 1, 1))
        with pytest.raises(InvariantError):
            assemble_outline(floor_array(R), template_B("O10", IDENTITY), (2, 2, 2, 1, 1))


class TestRules:
    @pytest.mark.parametrize("label", CLASS_LABELS)
    def test_admissible_graphs_pass(self, label):
        y = CANONICAL[label]
        assert not violates_rule1(y) and not violates_rule2(y) and not mixes_zero_and_two(y)

    def test_rule1(self):
        y = [list(r) for r in CANONICAL["O10"]]
        y[0][1] = y[1][0] = y[0][2] = y[2][0] = 2
        assert violates_rule1(y)

    def test_rule2_patterns(self):
        # a 2-edge (0,1); 1-edges from 0; the opposite triangle all 2
        y = [[0 if i == j else 2 for j in range(5)] for i in range(5)]
        for c in (2, 3, 4):
            y[0][c] = y[c][0] = 1
        assert violates_rule2(y)
        swapped = [[0 if i == j else 3 - y[i][j] for j in range(5)] for i in range(5)]
        assert violates_rule2(swapped)
        # alternating 2,1,1,2 path
        y = [list(r) for r in CANONICAL["O10"]]
        y[0][2] = y[2][0] = y[1][3] = y[3][1] = 2
        assert violates_rule2(y)

    def test_mixing(self):
        y = [list(r) for r in CANONICAL["O10"]]
        y[0][1] = y[1][0] = 0
        y[2][3] = y[3][2] = 2
        assert mixes_zero_and_two(y)


@given(st.lists(st.integers(1, 12), min_size=5, max_size=5).map(lambda xs: tuple(sorted(xs, reverse=True))))
def test_pipeline_property(h):
    if not exists_k5_bruteforce(h):
        return
    b = build_k5(h)
    y = y_matrix(h)
    assert [list(r) for r in b.graph.y] == y
    assert b.graph.class_label == y_class(y)
    O = b.outline
    assert outline_ok(O.P, O.Q, O.R, O.counts)
    assert O.has_pure_diagonal()


def test_pipeline_small_exhaustive():
    for n in range(5, 21):
        for h in partitions_exact(n, 5):
            if exists_k5_bruteforce(h):
                assert build_k5(h).graph.class_label == y_class(y_matrix(h))
