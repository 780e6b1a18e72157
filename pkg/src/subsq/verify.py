"""Independent checks on squares, realizations and outlines.

Nothing here calls the construction code: reductions are recomputed from
scratch and latinity is checked with row and column bitsets.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .core import LatinSquare, OutlineRectangle, Partition, Realization

Grid = Sequence[Sequence[int]]


def _grid(L: LatinSquare | Grid) -> Grid:
    return L.grid if isinstance(L, LatinSquare) else L


def is_latin(L: LatinSquare | Grid) -> bool:
    g = _grid(L)
    n = len(g)
    if n == 0 or any(len(row) != n for row in g):
        return False
    full = (1 << n) - 1
    cols = [0] * n
    for row in g:
        seen = 0
        for c, v in enumerate(row):
            if not isinstance(v, int) or not 1 <= v <= n:
                return False
            bit = 1 << (v - 1)
            if seen & bit or cols[c] & bit:
                return False
            seen |= bit
            cols[c] |= bit
        if seen != full:
            return False
    return all(c == full for c in cols)


def is_realization(L: LatinSquare | Grid, P: Partition | Sequence[int]) -> bool:
    """Latin, and every diagonal block uses exactly its own symbol group."""
    g = _grid(L)
    h = list(P)
    if not h or any(not isinstance(x, int) or x < 1 for x in h):
        return False
    if any(a < b for a, b in zip(h, h[1:])):
        return False
    if sum(h) != len(g) or not is_latin(g):
        return False
    off = 0
    for size in h:
        lo, hi = off + 1, off + size
        for r in range(off, off + size):
            if {g[r][c] for c in range(off, off + size)} != set(range(lo, hi + 1)):
                return False
        off += size
    return True


def reduction_equals(L: LatinSquare | Grid, O: OutlineRectangle) -> bool:
    g = _grid(L)
    n = len(g)
    if sum(O.P) != n:
        return False

    def owner(sizes: Sequence[int]) -> list[int]:
        out = []
        for b, s in enumerate(sizes):
            out += [b] * s
        return out

    rb, cb, sb = owner(O.P), owner(O.Q), owner(O.R)
    tally: dict[tuple[int, int, int], int] = {}
    for r in range(n):
        for c in range(n):
            key = (rb[r], cb[c], sb[g[r][c] - 1])
            tally[key] = tally.get(key, 0) + 1
    u, v, t = len(O.P), len(O.Q), len(O.R)
    for i in range(u):
        for j in range(v):
            for k in range(t):
                if tally.get((i, j, k), 0) != O.counts[i][j][k]:
                    return False
    return True


def is_subsquare(L: LatinSquare | Grid, rows: Iterable[int], cols: Iterable[int], symbols: Iterable[int]) -> bool:
    """1-based rows x cols sub-array is a latin square on ``symbols``."""
    g = _grid(L)
    rows, cols, symbols = sorted(set(rows)), sorted(set(cols)), set(symbols)
    if not len(rows) == len(cols) == len(symbols):
        return False
    return all({g[r - 1][c - 1] for c in cols} == symbols for r in rows) and all(
        {g[r - 1][c - 1] for r in rows} == symbols for c in cols
    )


def normalize(
    L: LatinSquare | Grid,
    blocks: Sequence[tuple[Iterable[int], Iterable[int], Iterable[int]]],
) -> Realization:
    """Relabel rows, columns and symbols so the given subsquares sit on the diagonal.

    ``blocks`` lists (rows, columns, symbols) as 1-based collections; they
    must be pairwise disjoint subsquares that together cover the square.
    Blocks are ordered by decreasing size (stable), each block's rows,
    columns and symbols keep their relative order.
    """
    g = _grid(L)
    n = len(g)
    if not is_latin(g):
        raise ValueError("input is not a latin square")
    norm = [(sorted(set(r)), sorted(set(c)), sorted(set(s))) for r, c, s in blocks]
    for b, (rows, cols, syms) in enumerate(norm, 1):
        if not is_subsquare(g, rows, cols, syms):
            raise ValueError(f"block {b} is not a subsquare")
    for axis, name in ((0, "row"), (1, "column"), (2, "symbol")):
        used = [x for blk in norm for x in blk[axis]]
        if len(used) != len(set(used)):
            raise ValueError(f"blocks share a {name}")
        if sorted(used) != list(range(1, n + 1)):
            raise ValueError(f"blocks do not cover every {name}")
    order = sorted(range(len(norm)), key=lambda b: -len(norm[b][0]))
    new_rows = [r for b in order for r in norm[b][0]]
    new_cols = [c for b in order for c in norm[b][1]]
    relabel = {}
    for b in order:
        for s in norm[b][2]:
            relabel[s] = len(relabel) + 1
    grid = tuple(tuple(relabel[g[r - 1][c - 1]] for c in new_cols) for r in new_rows)
    parts = tuple(len(norm[b][0]) for b in order)
    return Realization(LatinSquare(grid), Partition(parts))
