"""Domain types, exact sixths arithmetic, reduction and serialization.

Symbols, rows and columns are 1-based in every public structure.  Block
``i`` of a partition covers the contiguous range ``offset_i + 1 ..
offset_i + h_i``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class SubsqError(Exception):
    """Base class for errors raised by this package."""


class ParseError(SubsqError, ValueError):
    """Malformed text or JSON input."""


class InvariantError(SubsqError):
    """An internal invariant failed; indicates a defect or corrupted input."""


def _as_sizes(sizes: Iterable[int], what: str) -> tuple[int, ...]:
    out = tuple(sizes)
    if not out:
        raise ValueError(f"{what} must be non-empty")
    for s in out:
        if isinstance(s, bool) or not isinstance(s, int) or s < 1:
            raise ValueError(f"{what} must contain positive integers, got {s!r}")
    return out


def offsets(sizes: Sequence[int]) -> list[int]:
    """Start offset of each block: ``[0, s1, s1 + s2, ...]`` without the total."""
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


def block_index(sizes: Sequence[int]) -> list[int]:
    """Map each 0-based position 0..n-1 to the 0-based block containing it."""
    out = []
    for b, s in enumerate(sizes):
        out.extend([b] * s)
    return out


@dataclass(frozen=True)
class Partition:
    """Non-increasing positive part sizes."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = _as_sizes(self.parts, "partition")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"partition must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def offsets(self) -> list[int]:
        return offsets(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True, order=True)
class SixthCount:
    """Exact non-negative rational with denominator 6."""

    numerator_sixths: int

    def __post_init__(self) -> None:
        v = self.numerator_sixths
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError("numerator_sixths must be an int")
        if v < 0:
            raise ValueError(f"SixthCount must be non-negative, got {v}/6")

    @classmethod
    def from_int(cls, value: int) -> "SixthCount":
        return cls(6 * value)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "SixthCount":
        value = Fraction(value)
        if 6 % value.denominator:
            raise ValueError(f"{value} is not a multiple of 1/6")
        return cls(int(value * 6))

    def __add__(self, other: "SixthCount") -> "SixthCount":
        return SixthCount(self.numerator_sixths + other.numerator_sixths)

    def __sub__(self, other: "SixthCount") -> "SixthCount":
        d = self.numerator_sixths - other.numerator_sixths
        if d < 0:
            raise ValueError("SixthCount subtraction would be negative")
        return SixthCount(d)

    def floor(self) -> int:
        return self.numerator_sixths // 6

    def frac(self) -> "SixthCount":
        return SixthCount(self.numerator_sixths % 6)

    def split(self) -> tuple[int, "SixthCount"]:
        return self.floor(), self.frac()

    def is_integer(self) -> bool:
        return self.numerator_sixths % 6 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator_sixths, 6)

    def __str__(self) -> str:
        return str(self.as_fraction())


@dataclass(frozen=True)
class LatinSquare:
    """An n x n grid over symbols 1..n with no repeats in any row or column."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        grid = tuple(tuple(row) for row in self.grid)
        n = len(grid)
        if n == 0:
            raise ValueError("latin square must have order >= 1")
        for r, row in enumerate(grid):
            if len(row) != n:
                raise ValueError(f"row {r + 1} has {len(row)} entries, expected {n}")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
                    raise ValueError(f"symbol {v!r} out of range 1..{n}")
            if len(set(row)) != n:
                raise ValueError(f"row {r + 1} repeats a symbol")
        for c in range(n):
            if len({grid[r][c] for r in range(n)}) != n:
                raise ValueError(f"column {c + 1} repeats a symbol")
        object.__setattr__(self, "grid", grid)

    @property
    def n(self) -> int:
        return len(self.grid)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.grid[r][c]

    @classmethod
    def cyclic(cls, n: int) -> "LatinSquare":
        return cls(tuple(tuple((r + c) % n + 1 for c in range(n)) for r in range(n)))


@dataclass(frozen=True)
class Realization:
    """A latin square in normal form for ``partition``."""

    square: LatinSquare
    partition: Partition

    def __post_init__(self) -> None:
        n = self.square.n
        if self.partition.n != n:
            raise ValueError(f"partition sums to {self.partition.n}, square has order {n}")
        g = self.square.grid
        for off, h in zip(self.partition.offsets(), self.partition.parts):
            lo, hi = off + 1, off + h
            for r in range(off, off + h):
                for c in range(off, off + h):
                    if not lo <= g[r][c] <= hi:
                        raise ValueError(
                            f"cell ({r + 1},{c + 1}) holds {g[r][c]}, outside block symbols {lo}..{hi}"
                        )


@dataclass(frozen=True)
class OutlineRectangle:
    """Amalgamated square: ``counts[i][j][k]`` copies of symbol block k in cell (i, j).

    ``P``, ``Q`` and ``R`` are ordered block sizes of the rows, columns and
    symbols.  They need not be non-increasing, which lets the lifting stages
    peel unit rows off a block in place.
    """

    P: tuple[int, ...]
    Q: tuple[int, ...]
    R: tuple[int, ...]
    counts: tuple[tuple[tuple[int, ...], ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        P = _as_sizes(self.P, "P")
        Q = _as_sizes(self.Q, "Q")
        R = _as_sizes(self.R, "R")
        if not sum(P) == sum(Q) == sum(R):
            raise ValueError(f"P, Q, R sum to {sum(P)}, {sum(Q)}, {sum(R)}")
        counts = tuple(tuple(tuple(cell) for cell in row) for row in self.counts)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "counts", counts)
        self._check()

    def _check(self) -> None:
        P, Q, R, counts = self.P, self.Q, self.R, self.counts
        u, v, t = len(P), len(Q), len(R)
        if len(counts) != u or any(len(row) != v for row in counts):
            raise ValueError(f"counts must be {u} x {v}")
        for i, row in enumerate(counts):
            for j, cell in enumerate(row):
                if len(cell) != t:
                    raise ValueError(f"cell ({i + 1},{j + 1}) must have {t} symbol counts")
                if not set(map(type, cell)) <= {int} or (cell and min(cell) < 0):
                    raise ValueError(f"cell ({i + 1},{j + 1}) has a negative or non-integer count")
                if sum(cell) != P[i] * Q[j]:
                    raise ValueError(
                        f"cell ({i + 1},{j + 1}) holds {sum(cell)} symbols, expected {P[i] * Q[j]}"
                    )
        row_tot = [[sum(col) for col in zip(*row)] for row in counts]
        col_tot = [[sum(col) for col in zip(*(counts[i][j] for i in range(u)))] for j in range(v)]
        for i in range(u):
            for k in range(t):
                if row_tot[i][k] != P[i] * R[k]:
                    raise ValueError(
                        f"symbol {k + 1} occurs {row_tot[i][k]} times in row {i + 1}, expected {P[i] * R[k]}"
                    )
        for j in range(v):
            for k in range(t):
                if col_tot[j][k] != Q[j] * R[k]:
                    raise ValueError(
                        f"symbol {k + 1} occurs {col_tot[j][k]} times in column {j + 1}, expected {Q[j] * R[k]}"
                    )

    @property
    def n(self) -> int:
        return sum(self.P)

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.P), len(self.Q), len(self.R)

    def cell(self, i: int, j: int) -> dict[int, int]:
        """Non-zero multiplicities of cell (i, j), 0-based, keyed by 1-based symbol block."""
        return {k + 1: x for k, x in enumerate(self.counts[i][j]) if x}

    def has_pure_diagonal(self) -> bool:
        """True when square and every cell (i, i) holds only symbol block i."""
        if not self.P == self.Q == self.R:
            return False
        return all(self.cell(i, i) == {i + 1: self.P[i] ** 2} for i in range(len(self.P)))


@dataclass(frozen=True)
class RationalOutline:
    """Symmetric rational outline: ``entries[i][j][k]`` copies of symbol k in cell (i, j)."""

    partition: Partition
    entries: tuple[tuple[tuple[SixthCount, ...], ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        h = self.partition.parts
        k = len(h)
        e = tuple(tuple(tuple(cell) for cell in row) for row in self.entries)
        if len(e) != k or any(len(row) != k or any(len(c) != k for c in row) for row in e):
            raise ValueError(f"entries must be {k} x {k} x {k}")
        object.__setattr__(self, "entries", e)
        six = [[[e[i][j][s].numerator_sixths for s in range(k)] for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(k):
                if sum(six[i][j]) != 6 * h[i] * h[j]:
                    raise ValueError(f"cell ({i + 1},{j + 1}) does not total h_i h_j")
                for s in range(k):
                    x = six[i][j][s]
                    if not (x == six[j][i][s] == six[i][s][j] == six[s][j][i] == six[j][s][i] == six[s][i][j]):
                        raise ValueError(f"entry ({i + 1},{j + 1},{s + 1}) breaks permutation symmetry")
        for i in range(k):
            for s in range(k):
                if sum(six[i][j][s] for j in range(k)) != 6 * h[i] * h[s]:
                    raise ValueError(f"row {i + 1} has the wrong count of symbol {s + 1}")
                if sum(six[j][i][s] for j in range(k)) != 6 * h[i] * h[s]:
                    raise ValueError(f"column {i + 1} has the wrong count of symbol {s + 1}")

    def entry(self, i: int, j: int, k: int) -> SixthCount:
        """Entry at 1-based (row, column, symbol)."""
        return self.entries[i - 1][j - 1][k - 1]


def reduce(
    square: LatinSquare,
    P: Partition | Sequence[int],
    Q: Partition | Sequence[int],
    R: Partition | Sequence[int],
) -> OutlineRectangle:
    """Amalgamate rows, columns and symbols of ``square`` into blocks P, Q, R."""
    P, Q, R = tuple(P), tuple(Q), tuple(R)
    n = square.n
    for name, sizes in (("P", P), ("Q", Q), ("R", R)):
        if sum(sizes) != n:
            raise ValueError(f"{name} sums to {sum(sizes)}, square has order {n}")
    rb, cb, sb = block_index(P), block_index(Q), block_index(R)
    t = len(R)
    counts = [[[0] * t for _ in Q] for _ in P]
    for r, row in enumerate(square.grid):
        cr = counts[rb[r]]
        for c, v in enumerate(row):
            cr[cb[c]][sb[v - 1]] += 1
    return OutlineRectangle(P, Q, R, counts)


# -- serialization ---------------------------------------------------------


def parse_partition(text: str) -> Partition:
    """Parse ``"3,2,1,1,1"`` (commas and/or whitespace) into a Partition."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise ParseError("empty partition")
    try:
        parts = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ParseError(f"bad partition literal {text!r}") from exc
    try:
        return Partition(parts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def square_to_text(square: LatinSquare) -> str:
    return "".join(" ".join(map(str, row)) + "\n" for row in square.grid)


def square_from_text(text: str) -> LatinSquare:
    if not text.endswith("\n"):
        raise ParseError("grid text must end with a newline")
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            raise ParseError(f"blank line {lineno} in grid")
        try:
            rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise ParseError(f"non-integer token on line {lineno}") from exc
    try:
        return LatinSquare(tuple(rows))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def square_to_json(square: LatinSquare, partition: Partition | None = None) -> str:
    doc: dict = {"n": square.n}
    if partition is not None:
        doc["partition"] = list(partition.parts)
    doc["grid"] = [list(row) for row in square.grid]
    return json.dumps(doc)


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    return doc


def square_from_json(text: str) -> tuple[LatinSquare, Partition | None]:
    doc = _load(text)
    try:
        square = LatinSquare(tuple(tuple(row) for row in doc["grid"]))
        partition = Partition(tuple(doc["partition"])) if doc.get("partition") is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad square document: {exc}") from exc
    if doc.get("n", square.n) != square.n:
        raise ParseError(f"n = {doc['n']} does not match grid order {square.n}")
    return square, partition


def outline_to_json(outline: OutlineRectangle) -> str:
    return json.dumps(
        {
            "P": list(outline.P),
            "Q": list(outline.Q),
            "R": list(outline.R),
            "counts": [[list(cell) for cell in row] for row in outline.counts],
        }
    )


def outline_from_json(text: str) -> OutlineRectangle:
    doc = _load(text)
    try:
        return OutlineRectangle(
            tuple(doc["P"]),
            tuple(doc["Q"]),
            tuple(doc["R"]),
            tuple(tuple(tuple(cell) for cell in row) for row in doc["counts"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad outline document: {exc}") from exc


def partition_to_json(partition: Partition) -> str:
    return json.dumps(list(partition.parts))


def partition_from_json(text: str) -> Partition:
    try:
        doc = json.loads(text)
        return Partition(tuple(doc))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ParseError(f"bad partition document: {exc}") from exc


def rational_to_json(outline: RationalOutline) -> str:
    return json.dumps(
        {
            "P": list(outline.partition.parts),
            "entries_sixths": [
                [[x.numerator_sixths for x in cell] for cell in row] for row in outline.entries
            ],
        }
    )


def rational_from_json(text: str) -> RationalOutline:
    doc = _load(text)
    try:
        return RationalOutline(
            Partition(tuple(doc["P"])),
            tuple(
                tuple(tuple(SixthCount(x) for x in cell) for cell in row)
                for row in doc["entries_sixths"]
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad rational outline document: {exc}") from exc
