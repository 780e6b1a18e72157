"""Round the five-part symmetric rational outline to an integer outline.

The floors of the rational entries give an array ``A``; the discarded
fractional parts form a deficiency graph ``y`` on the five blocks, which is
always one of nine labelled complete graphs.  A completion array ``B`` for
the matching class (permuted onto the actual vertex labels) supplies exactly
the missing entries, and ``A + B`` is a valid outline with pure diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .core import InvariantError, OutlineRectangle, Partition, RationalOutline
from .rational import build_symmetric_rational


class NoMatch(InvariantError):
    """A deficiency graph outside the nine admissible classes."""


Matrix = tuple[tuple[int, ...], ...]
Cells = tuple[tuple[tuple[int, ...], ...], ...]

CLASS_LABELS = ("Z10", "Z4O6", "Z1O9", "O10", "T1O9", "O4T6", "T10", "O1T9", "T4O6")


def _canonical(default: int, special: int, pattern: str) -> Matrix:
    # pattern "none": all default; "star": edges at vertex 1 special;
    # "edge": edge (1,2) special
    m = [[0 if i == j else default for j in range(5)] for i in range(5)]
    for i in range(5):
        for j in range(5):
            if i == j:
                continue
            if pattern == "star" and 0 in (i, j):
                m[i][j] = special
            elif pattern == "edge" and {i, j} == {0, 1}:
                m[i][j] = special
    return tuple(tuple(r) for r in m)


CANONICAL: dict[str, Matrix] = {
    "Z10": _canonical(0, 0, "none"),
    "Z4O6": _canonical(1, 0, "star"),
    "Z1O9": _canonical(1, 0, "edge"),
    "O10": _canonical(1, 1, "none"),
    "T1O9": _canonical(1, 2, "edge"),
    "O4T6": _canonical(2, 1, "star"),
    "T10": _canonical(2, 2, "none"),
    "O1T9": _canonical(2, 1, "edge"),
    "T4O6": _canonical(1, 2, "star"),
}


def _cells(rows: Sequence[Sequence[str]]) -> Cells:
    return tuple(
        tuple(tuple(int(t) for t in cell.split(",")) if cell else () for cell in row) for row in rows
    )


# Completion arrays for the five base classes, symbols 1-based.
BASE_TEMPLATES: dict[str, Cells] = {
    "Z4O6": _cells([
        ["", "", "", "", ""],
        ["", "", "5", "3", "4"],
        ["", "4", "", "5", "2"],
        ["", "5", "2", "", "3"],
        ["", "3", "4", "2", ""],
    ]),
    "Z1O9": _cells([
        ["", "", "5", "3", "4"],
        ["", "", "4", "5", "3"],
        ["4", "5", "", "2", "1"],
        ["5", "3", "1", "", "2"],
        ["3", "4", "2", "1", ""],
    ]),
    "O10": _cells([
        ["", "3", "5", "2", "4"],
        ["4", "", "1", "5", "3"],
        ["5", "4", "", "1", "2"],
        ["3", "5", "2", "", "1"],
        ["2", "1", "4", "3", ""],
    ]),
    "T1O9": _cells([
        ["", "4,5", "2", "2", "3"],
        ["3,5", "", "1", "1", "4"],
        ["4", "1", "", "5", "2"],
        ["2", "3", "5", "", "1"],
        ["2", "1", "4", "3", ""],
    ]),
    "T4O6": _cells([
        ["", "4,5", "2,4", "3,5", "2,3"],
        ["3,5", "", "1", "1", "4"],
        ["4,5", "1", "", "2", "1"],
        ["2,3", "1", "5", "", "1"],
        ["2,4", "3", "1", "1", ""],
    ]),
}

# The alternate all-ones completion drawn for the (5,4,3,2,1) example.
ALTERNATE_O10: Cells = _cells([
    ["", "4", "2", "5", "3"],
    ["4", "", "5", "3", "1"],
    ["2", "5", "", "1", "4"],
    ["5", "3", "1", "", "2"],
    ["3", "1", "4", "2", ""],
])

_UNIONS = {"O4T6": ("Z4O6", "O10"), "O1T9": ("Z1O9", "O10"), "T10": ("O10", "O10")}


def _union(a: Cells, b: Cells) -> Cells:
    return tuple(tuple(tuple(sorted(a[i][j] + b[i][j])) for j in range(5)) for i in range(5))


def canonical_template(label: str) -> Cells:
    """Completion array for the canonical graph of ``label``."""
    if label == "Z10":
        return tuple(tuple(() for _ in range(5)) for _ in range(5))
    if label in _UNIONS:
        first, second = _UNIONS[label]
        return _union(BASE_TEMPLATES[first], BASE_TEMPLATES[second])
    return BASE_TEMPLATES[label]


@dataclass(frozen=True)
class YGraph:
    """Deficiency graph with its class and the vertex map from the canonical graph.

    ``perm[a]`` is the 0-based actual vertex playing canonical vertex ``a``,
    so ``y[perm[a]][perm[b]] == CANONICAL[class_label][a][b]``.
    """

    y: Matrix
    class_label: str | None = None
    perm: tuple[int, ...] | None = None


@dataclass(frozen=True)
class BArray:
    """5 x 5 array of symbol multisets (sorted tuples of 1-based symbols)."""

    cells: Cells

    def y(self) -> Matrix:
        return tuple(tuple(len(c) for c in row) for row in self.cells)

    def check(self, y: Matrix) -> None:
        """Raise InvariantError unless cell sizes and row/column symbol counts equal ``y``."""
        for i in range(5):
            for j in range(5):
                cell = self.cells[i][j]
                if len(cell) != y[i][j]:
                    raise InvariantError(f"B cell ({i + 1},{j + 1}) has {len(cell)} entries, want {y[i][j]}")
                if i + 1 in cell or j + 1 in cell:
                    raise InvariantError(f"B cell ({i + 1},{j + 1}) contains its own row or column symbol")
        for i in range(5):
            for s in range(5):
                in_row = sum(self.cells[i][j].count(s + 1) for j in range(5))
                in_col = sum(self.cells[j][i].count(s + 1) for j in range(5))
                if in_row != y[i][s] or in_col != y[i][s]:
                    raise InvariantError(
                        f"symbol {s + 1} occurs {in_row}/{in_col} times in row/column {i + 1}, want {y[i][s]}"
                    )


def floor_array(R: RationalOutline) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """``A[i][j][k]``: floor of each rational entry (0-based indices)."""
    return tuple(tuple(tuple(x.floor() for x in cell) for cell in row) for row in R.entries)


def deficiency_graph(R: RationalOutline) -> YGraph:
    k = R.partition.k
    if k != 5:
        raise ValueError("deficiency graphs are defined for five parts")
    y = [[0] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(5):
            if i == j:
                continue
            sixths = sum(x.frac().numerator_sixths for x in R.entries[i][j])
            if sixths % 6:
                raise InvariantError(
                    f"fractional parts of cell ({i + 1},{j + 1}) sum to {sixths}/6; "
                    f"entries_sixths={[[ [x.numerator_sixths for x in c] for c in row] for row in R.entries]}"
                )
            y[i][j] = sixths // 6
    return YGraph(tuple(tuple(r) for r in y))


def classify_graph(Y: Matrix | YGraph) -> YGraph:
    """Match ``Y`` against the nine canonical graphs over all 120 vertex maps."""
    y = Y.y if isinstance(Y, YGraph) else tuple(tuple(r) for r in Y)
    if len(y) != 5 or any(len(r) != 5 for r in y):
        raise ValueError("Y must be 5 x 5")
    for i in range(5):
        if y[i][i] != 0:
            raise ValueError("Y must have zero diagonal")
        for j in range(5):
            if y[i][j] != y[j][i] or y[i][j] not in (0, 1, 2):
                raise ValueError("Y must be symmetric with entries in {0, 1, 2}")
    for label in CLASS_LABELS:
        canon = CANONICAL[label]
        for perm in permutations(range(5)):
            if all(y[perm[a]][perm[b]] == canon[a][b] for a in range(5) for b in range(5)):
                return YGraph(y, label, perm)
    raise NoMatch(f"deficiency graph {y} is none of the nine admissible graphs")


def template_B(class_label: str, perm: Sequence[int]) -> BArray:
    """Canonical completion for ``class_label`` with rows, columns and symbols relabelled by ``perm``."""
    if class_label not in CANONICAL:
        raise ValueError(f"unknown class {class_label!r}")
    perm = tuple(perm)
    if sorted(perm) != list(range(5)):
        raise ValueError(f"{perm} is not a permutation of 0..4")
    canon = canonical_template(class_label)
    cells = [[()] * 5 for _ in range(5)]
    for a in range(5):
        for b in range(5):
            cells[perm[a]][perm[b]] = tuple(sorted(perm[s - 1] + 1 for s in canon[a][b]))
    out = BArray(tuple(tuple(r) for r in cells))
    canon_y = CANONICAL[class_label]
    y = [[0] * 5 for _ in range(5)]
    for a in range(5):
        for b in range(5):
            y[perm[a]][perm[b]] = canon_y[a][b]
    out.check(tuple(tuple(r) for r in y))
    return out


def assemble_outline(A, B: BArray, P: Partition | Sequence[int]) -> OutlineRectangle:
    """Cell-wise union of the floor array and the completion array."""
    h = tuple(P)
    counts = [[list(A[i][j]) for j in range(5)] for i in range(5)]
    for i in range(5):
        for j in range(5):
            for s in B.cells[i][j]:
                counts[i][j][s - 1] += 1
    try:
        out = OutlineRectangle(h, h, h, counts)
    except ValueError as exc:
        raise InvariantError(f"A + B is not an outline rectangle: {exc}") from exc
    if not out.has_pure_diagonal():
        raise InvariantError("A + B has an impure diagonal cell")
    return out


@dataclass(frozen=True)
class K5Build:
    """Every intermediate of the five-part outline construction."""

    rational: RationalOutline
    floor: tuple[tuple[tuple[int, ...], ...], ...]
    graph: YGraph
    completion: BArray
    outline: OutlineRectangle


def build_k5(P: Partition | Sequence[int]) -> K5Build:
    rational = build_symmetric_rational(P)
    A = floor_array(rational)
    graph = classify_graph(deficiency_graph(rational))
    B = template_B(graph.class_label, graph.perm)
    outline = assemble_outline(A, B, rational.partition)
    return K5Build(rational, A, graph, B, outline)


def build_outline_k5(P: Partition | Sequence[int]) -> OutlineRectangle:
    return build_k5(P).outline


# -- structural rules on deficiency graphs ---------------------------------


def violates_rule1(y: Matrix) -> bool:
    """Some vertex sees edge labels {1, 1, 2, 2}."""
    return any(sorted(y[i][j] for j in range(5) if j != i) == [1, 1, 2, 2] for i in range(5))


def violates_rule2(y: Matrix) -> bool:
    """Some forbidden pattern appears on labelled vertices."""
    V = range(5)
    for a in V:
        for b in V:
            if b == a:
                continue
            rest = [c for c in V if c not in (a, b)]
            star = [y[a][c] for c in rest]
            tri = [y[rest[0]][rest[1]], y[rest[0]][rest[2]], y[rest[1]][rest[2]]]
            if y[a][b] == 2 and star == [1, 1, 1] and tri == [2, 2, 2]:
                return True
            if y[a][b] == 1 and star == [2, 2, 2] and tri == [1, 1, 1]:
                return True
    for i, j, k, l in permutations(V, 4):
        if y[i][j] == 1 and y[k][l] == 1 and y[i][k] == 2 and y[j][l] == 2:
            return True
    return False


def mixes_zero_and_two(y: Matrix) -> bool:
    flat = [y[i][j] for i in range(5) for j in range(5) if i != j]
    return 0 in flat and 2 in flat
