"""Exhaustive search for a realization of an arbitrary partition at small order.

Two exhaustive searches, both independent of the constructive code:

1. Amalgamated feasibility.  The reduction of any normal-form realization
   modulo (P, P, P) is an integer outline whose off-diagonal cell (i, j)
   holds no symbol i or j.  If no such integer array exists, no realization
   exists.  This search is tiny (at most k^3 integer unknowns) and settles
   the barely-infeasible partitions on which square-level search stalls.
2. Square search.  Diagonal blocks are pre-filled with cyclic squares on
   their own symbol groups and the remaining cells are completed by the
   compiled (or pure-Python) backtracking kernel, choosing the most
   constrained cell / row-symbol / column-symbol at each node.

``NotExists`` is reported only when one of the two searches is exhausted;
``Unknown`` only when a limit trips.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from . import kernels
from .core import LatinSquare, Partition, Realization


@dataclass(frozen=True)
class SearchConfig:
    node_limit: int | None = None
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


class Verdict(str, Enum):
    FOUND = "Found"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SearchResult:
    verdict: Verdict
    realization: Realization | None = None
    nodes: int = 0
    stage: str = ""


class _Limit(Exception):
    pass


def amalgamated_feasible(h: Sequence[int], node_limit: int = 0, deadline: float = 0.0) -> tuple[bool, int]:
    """Whether an integer pure-diagonal outline for ``h`` exists; returns (feasible, nodes).

    Unknowns ``x[i][j][s]`` for distinct i, j, s; each lies in one cell
    constraint (total h_i h_j), one row constraint (h_i h_s) and one column
    constraint (h_j h_s).  Depth-first search branches on a variable of the
    constraint with the fewest unassigned variables, values high to low, and
    prunes when a constraint's remaining target exceeds the sum of its
    variables' upper bounds.
    """
    k = len(h)
    index: dict[tuple[int, int, int], int] = {}
    for i in range(k):
        for j in range(k):
            for s in range(k):
                if len({i, j, s}) == 3:
                    index[i, j, s] = len(index)
    cons: list[list[int]] = []
    target: list[int] = []
    for i in range(k):
        for j in range(k):
            if i != j:
                cons.append([index[i, j, s] for s in range(k) if s not in (i, j)])
                target.append(h[i] * h[j])
    for i in range(k):
        for s in range(k):
            if s != i:
                cons.append([index[i, j, s] for j in range(k) if j not in (i, s)])
                target.append(h[i] * h[s])
                cons.append([index[j, i, s] for j in range(k) if j not in (i, s)])
                target.append(h[i] * h[s])
    member: list[list[int]] = [[] for _ in index]
    for ci, c in enumerate(cons):
        for v in c:
            member[v].append(ci)
    residual = list(target)
    unassigned = [len(c) for c in cons]
    value = [-1] * len(index)
    nodes = 0

    def upper(v: int) -> int:
        return min(residual[c] for c in member[v])

    def rec() -> bool:
        nonlocal nodes
        best, fewest = -1, len(index) + 1
        for ci, c in enumerate(cons):
            f = unassigned[ci]
            if f == 0:
                if residual[ci]:
                    return False
                continue
            if sum(upper(v) for v in c if value[v] < 0) < residual[ci]:
                return False
            if f < fewest:
                best, fewest = ci, f
        if best < 0:
            return True
        v = next(v for v in cons[best] if value[v] < 0)
        hi = upper(v)
        if fewest == 1:
            if residual[best] > hi:
                return False
            choices = [residual[best]]
        else:
            choices = range(hi, -1, -1)
        for x in choices:
            nodes += 1
            if node_limit and nodes > node_limit:
                raise _Limit
            if deadline and not nodes & 255 and time.monotonic() > deadline:
                raise _Limit
            value[v] = x
            for c in member[v]:
                residual[c] -= x
                unassigned[c] -= 1
            if rec():
                return True
            for c in member[v]:
                residual[c] += x
                unassigned[c] += 1
            value[v] = -1
        return False

    try:
        return rec(), nodes
    except _Limit:
        raise _Limit(nodes) from None


def block_prefill(P: Partition) -> list[int]:
    """Flat n*n grid with each diagonal block a cyclic square on its symbol group, 0 elsewhere."""
    n = P.n
    cells = [0] * (n * n)
    for off, h in zip(P.offsets(), P.parts):
        for a in range(h):
            for b in range(h):
                cells[(off + a) * n + off + b] = off + (a + b) % h + 1
    return cells


def search_realization(P: Partition | Sequence[int], cfg: SearchConfig | None = None) -> SearchResult:
    if not isinstance(P, Partition):
        P = Partition(tuple(P))
    cfg = cfg or SearchConfig()
    deadline = time.monotonic() + cfg.time_limit if cfg.time_limit else 0.0
    budget = cfg.node_limit or 0

    try:
        feasible, used = amalgamated_feasible(P.parts, budget, deadline)
    except _Limit as exc:
        return SearchResult(Verdict.UNKNOWN, nodes=exc.args[0], stage="outline")
    if not feasible:
        return SearchResult(Verdict.NOT_EXISTS, nodes=used, stage="outline")

    n = P.n
    remaining = 0
    if budget:
        remaining = budget - used
        if remaining <= 0:
            return SearchResult(Verdict.UNKNOWN, nodes=used, stage="square")
    status, grid, nodes = kernels.search(n, block_prefill(P), remaining, deadline)
    nodes += used
    if status == kernels.LIMIT:
        return SearchResult(Verdict.UNKNOWN, nodes=nodes, stage="square")
    if status == kernels.EXHAUSTED:
        return SearchResult(Verdict.NOT_EXISTS, nodes=nodes, stage="square")
    square = LatinSquare(tuple(tuple(grid[r * n : (r + 1) * n]) for r in range(n)))
    return SearchResult(Verdict.FOUND, Realization(square, P), nodes, "square")
