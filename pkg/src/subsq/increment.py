"""Grow every block of a five-part realization by one, repeatedly.

The outline of the input (mod r, r, r) is extended by a fixed latin square
``A`` (one extra unit per cell) and an array ``B`` whose symbol counts are
linear forms in r.  Their union is an outline for (r_i + 1), which lifts.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .core import InvariantError, LatinSquare, OutlineRectangle, Partition, Realization, reduce
from .lifting import lift

A_GRID: tuple[tuple[int, ...], ...] = (
    (1, 4, 2, 5, 3),
    (4, 2, 5, 3, 1),
    (2, 5, 3, 1, 4),
    (5, 3, 1, 4, 2),
    (3, 1, 4, 2, 5),
)

# Cell (i, j) -> {symbol: linear form in r1..r5}.
B_FORMS: tuple[tuple[dict[int, str], ...], ...] = (
    (
        {1: "2r1"},
        {3: "r2+r3", 4: "r1-r3"},
        {4: "r3+r4", 5: "r1-r4"},
        {2: "r1-r5", 5: "r4+r5"},
        {2: "r2+r5", 3: "r1-r2"},
    ),
    (
        {3: "r1-r2", 4: "r2-r5", 5: "r2+r5"},
        {2: "2r2"},
        {1: "r2+r3"},
        {1: "r1-r3", 3: "r2+r3+r4-r1"},
        {3: "r2-r4", 4: "r4+r5"},
    ),
    (
        {2: "r1+r3-r4-r5", 4: "r4+r5"},
        {1: "r2-r3", 4: "r3-r5", 5: "r3+r5"},
        {3: "2r3"},
        {1: "r1+r3-r2-r5", 2: "r2+r4+r5-r1"},
        {1: "r3+r5"},
    ),
    (
        {2: "r2+r4+r5-r1", 3: "r1-r5", 5: "r1-r2"},
        {1: "r3+r4", 5: "r2-r3"},
        {2: "r1-r5", 5: "r3+r4+r5-r1"},
        {4: "2r4"},
        {1: "r1-r3", 3: "r3+r4+r5-r1"},
    ),
    (
        {2: "r1-r3", 3: "r2+r3+r5-r1", 4: "r1-r2"},
        {1: "r1-r4", 4: "r2+r4+r5-r1"},
        {1: "r1-r2", 2: "r2+r3+r5-r1"},
        {1: "r2+r4+r5-r1", 3: "r1-r2"},
        {5: "2r5"},
    ),
)

_TERM = re.compile(r"([+-]?)(\d*)r([1-5])")


def coefficients(form: str) -> tuple[int, ...]:
    """``"r2+r3+r4-r1"`` -> (-1, 1, 1, 1, 0)."""
    coef = [0] * 5
    pos = 0
    for m in _TERM.finditer(form):
        if m.start() != pos:
            raise ValueError(f"cannot parse linear form {form!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef[int(m.group(3)) - 1] += sign * int(m.group(2) or 1)
        pos = m.end()
    if pos != len(form):
        raise ValueError(f"cannot parse linear form {form!r}")
    return tuple(coef)


B_COEFFICIENTS: tuple[tuple[dict[int, tuple[int, ...]], ...], ...] = tuple(
    tuple({s: coefficients(f) for s, f in cell.items()} for cell in row) for row in B_FORMS
)


@dataclass(frozen=True)
class IncrementArrays:
    r: tuple[int, ...]
    A: LatinSquare
    B: tuple[tuple[dict[int, int], ...], ...]

    def check(self) -> None:
        r = self.r
        if any(self.A.grid[i][i] != i + 1 for i in range(5)):
            raise InvariantError("A must have diagonal 1..5")
        for i in range(5):
            for j in range(5):
                cell = self.B[i][j]
                if any(v < 0 for v in cell.values()):
                    raise InvariantError(f"B cell ({i + 1},{j + 1}) has a negative count: {cell}")
                if sum(cell.values()) != r[i] + r[j]:
                    raise InvariantError(f"B cell ({i + 1},{j + 1}) totals {sum(cell.values())}, want {r[i] + r[j]}")
        for i in range(5):
            for s in range(1, 6):
                in_row = sum(self.B[i][j].get(s, 0) for j in range(5))
                in_col = sum(self.B[j][i].get(s, 0) for j in range(5))
                want = r[i] + r[s - 1]
                if in_row != want or in_col != want:
                    raise InvariantError(
                        f"symbol {s} occurs {in_row}/{in_col} times in B row/column {i + 1}, want {want}"
                    )


def build_increment_arrays(r: Partition | Sequence[int]) -> IncrementArrays:
    h = tuple(r)
    if len(h) != 5:
        raise ValueError(f"increment arrays need exactly 5 parts, got {len(h)}")
    if h[0] > h[2] + h[3] + h[4]:
        raise ValueError(f"r1 = {h[0]} exceeds r3 + r4 + r5 = {h[2] + h[3] + h[4]}; B would be negative")
    B = tuple(
        tuple({s: sum(c * x for c, x in zip(coef, h)) for s, coef in cell.items()} for cell in row)
        for row in B_COEFFICIENTS
    )
    arrays = IncrementArrays(h, LatinSquare(A_GRID), B)
    arrays.check()
    return arrays


def increment_outline(real: Realization) -> OutlineRectangle:
    """Outline for (r_i + 1): reduction of ``real`` plus A plus B."""
    r = real.partition.parts
    if len(r) != 5:
        raise ValueError(f"increment needs a 5-block realization, got {len(r)} blocks")
    arrays = build_increment_arrays(r)
    O = reduce(real.square, r, r, r)
    counts = [[list(O.counts[i][j]) for j in range(5)] for i in range(5)]
    for i in range(5):
        for j in range(5):
            counts[i][j][arrays.A.grid[i][j] - 1] += 1
            for s, c in arrays.B[i][j].items():
                counts[i][j][s - 1] += c
    p = tuple(x + 1 for x in r)
    try:
        out = OutlineRectangle(p, p, p, counts)
    except ValueError as exc:
        raise InvariantError(f"O + A + B is not an outline rectangle: {exc}") from exc
    if not out.has_pure_diagonal():
        raise InvariantError("O + A + B has an impure diagonal cell")
    return out


def increment_once(real: Realization) -> Realization:
    L = increment_outline(real)
    return Realization(lift(L), Partition(L.P))


def increment(real: Realization, q: int) -> Realization:
    if not isinstance(q, int) or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    for _ in range(q):
        real = increment_once(real)
    return real
