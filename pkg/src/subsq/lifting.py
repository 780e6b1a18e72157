"""Lift an outline rectangle to a latin square whose reduction equals it.

Lifting runs in three stages.  Unit rows are peeled off every row block,
then unit columns off every column block; each peel is an exact-degree
bipartite subgraph problem solved by max flow.  Once rows and columns are
all unit, each symbol block's positions form an ``r_k``-regular bipartite
graph, which splits into ``r_k`` perfect matchings, one per actual symbol.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .core import InvariantError, LatinSquare, OutlineRectangle, offsets


class Infeasible(InvariantError):
    """No integral solution to an exact-degree subproblem."""


@dataclass(frozen=True)
class DegreeConstrainedSubgraphProblem:
    """Choose ``0 <= s[l][r] <= multiplicity[l][r]`` with exact row and column sums."""

    left_degrees: tuple[int, ...]
    right_degrees: tuple[int, ...]
    multiplicity: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "left_degrees", tuple(self.left_degrees))
        object.__setattr__(self, "right_degrees", tuple(self.right_degrees))
        object.__setattr__(self, "multiplicity", tuple(tuple(r) for r in self.multiplicity))
        if sum(self.left_degrees) != sum(self.right_degrees):
            raise ValueError("left and right degrees must have equal sums")
        if len(self.multiplicity) != len(self.left_degrees) or any(
            len(r) != len(self.right_degrees) for r in self.multiplicity
        ):
            raise ValueError("multiplicity must be |left| x |right|")
        if min(self.left_degrees + self.right_degrees, default=0) < 0:
            raise ValueError("degrees must be non-negative")

    def is_solution(self, s: Sequence[Sequence[int]]) -> bool:
        L, R = len(self.left_degrees), len(self.right_degrees)
        return (
            all(0 <= s[l][r] <= self.multiplicity[l][r] for l in range(L) for r in range(R))
            and all(sum(s[l]) == self.left_degrees[l] for l in range(L))
            and all(sum(s[l][r] for l in range(L)) == self.right_degrees[r] for r in range(R))
        )


def solve_exact_degree_subgraph(p: DegreeConstrainedSubgraphProblem) -> list[list[int]]:
    """Edmonds-Karp on source -> left -> right -> sink, lowest index first."""
    L, R = len(p.left_degrees), len(p.right_degrees)
    src, sink = L + R, L + R + 1
    size = L + R + 2
    cap = [[0] * size for _ in range(size)]
    adj: list[list[int]] = [[] for _ in range(size)]

    def edge(a: int, b: int, c: int) -> None:
        if c <= 0:
            return
        if cap[a][b] == 0 and cap[b][a] == 0:
            adj[a].append(b)
            adj[b].append(a)
        cap[a][b] += c

    for l in range(L):
        edge(src, l, p.left_degrees[l])
        for r in range(R):
            edge(l, L + r, p.multiplicity[l][r])
    for r in range(R):
        edge(L + r, sink, p.right_degrees[r])
    for a in adj:
        a.sort()

    flow = 0
    need = sum(p.left_degrees)
    while flow < need:
        parent = [-1] * size
        parent[src] = src
        queue = deque([src])
        while queue and parent[sink] < 0:
            a = queue.popleft()
            for b in adj[a]:
                if parent[b] < 0 and cap[a][b] > 0:
                    parent[b] = a
                    queue.append(b)
        if parent[sink] < 0:
            break
        push, b = need - flow, sink
        while b != src:
            push = min(push, cap[parent[b]][b])
            b = parent[b]
        b = sink
        while b != src:
            cap[parent[b]][b] -= push
            cap[b][parent[b]] += push
            b = parent[b]
        flow += push
    if flow != need:
        raise Infeasible(f"max flow {flow} < required {need}")
    # flow on l -> r equals the reverse residual capacity
    return [[cap[L + r][l] for r in range(R)] for l in range(L)]


def _peel(block_counts, other, R):
    # a unit slice of a block: one unit per cell of the other axis' blocks
    problem = DegreeConstrainedSubgraphProblem(other, R, block_counts)
    return solve_exact_degree_subgraph(problem)


def split_row(O: OutlineRectangle, block: int) -> OutlineRectangle:
    """Split row block ``block`` (0-based) of size p into blocks of sizes 1 and p - 1."""
    p = O.P[block]
    if p < 2:
        raise ValueError(f"row block {block + 1} has size {p}; nothing to split")
    unit = _peel(O.counts[block], O.Q, O.R)
    rest = [[a - b for a, b in zip(O.counts[block][j], unit[j])] for j in range(len(O.Q))]
    counts = list(O.counts[:block]) + [unit, rest] + list(O.counts[block + 1 :])
    P = O.P[:block] + (1, p - 1) + O.P[block + 1 :]
    return OutlineRectangle(P, O.Q, O.R, counts)


def _transpose(O: OutlineRectangle) -> OutlineRectangle:
    u, v, _ = O.shape
    counts = [[O.counts[i][j] for i in range(u)] for j in range(v)]
    return OutlineRectangle(O.Q, O.P, O.R, counts)


def split_column(O: OutlineRectangle, block: int) -> OutlineRectangle:
    """Column counterpart of :func:`split_row`."""
    return _transpose(split_row(_transpose(O), block))


def split_symbols(O: OutlineRectangle) -> LatinSquare:
    n = O.n
    if any(p != 1 for p in O.P) or any(q != 1 for q in O.Q):
        raise ValueError("split_symbols needs unit row and column blocks")
    grid = [[0] * n for _ in range(n)]
    for k, (off, r) in enumerate(zip(offsets(O.R), O.R)):
        adj = [[j for j in range(n) if O.counts[i][j][k]] for i in range(n)]
        for c in range(r):
            match = kernels.perfect_matching(n, adj)
            if match is None:
                raise InvariantError(f"symbol block {k + 1} has no perfect matching at round {c + 1}")
            for i, j in enumerate(match):
                grid[i][j] = off + c + 1
                adj[i].remove(j)
        if any(adj):
            raise InvariantError(f"symbol block {k + 1} positions are not {r}-regular")
    return LatinSquare(tuple(tuple(row) for row in grid))


def _split_all_rows(O: OutlineRectangle) -> OutlineRectangle:
    i = 0
    while i < len(O.P):
        if O.P[i] > 1:
            O = split_row(O, i)
        i += 1
    return O


def lift(O: OutlineRectangle) -> LatinSquare:
    O = _split_all_rows(O)
    # columns are split as rows of the transpose, in the same order as split_column would
    O = _transpose(_split_all_rows(_transpose(O)))
    return split_symbols(O)
