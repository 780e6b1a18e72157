"""Pure-Python hot kernels.

Reference implementation of the two inner loops used by the package: the
latin square completion search behind the oracle and bipartite perfect
matching used when splitting symbol blocks.  ``_ckernel.pyx`` mirrors this
file line for line; both must return identical results for identical input.
"""
from __future__ import annotations

import time

FOUND = 1
EXHAUSTED = 0
LIMIT = -1

_TIME_CHECK_MASK = 1023


class _LimitHit(Exception):
    pass


def search(n, cells, node_limit=0, deadline=0.0):
    """Complete a partial latin square of order ``n``.

    ``cells`` is a flat row-major list with 0 for empty and 1..n otherwise.
    Returns ``(status, grid, nodes)``; ``grid`` is the completed flat list
    when ``status == FOUND`` and ``None`` otherwise.  ``node_limit`` of 0 and
    ``deadline`` of 0.0 mean unlimited; ``deadline`` is a
    ``time.monotonic()`` timestamp.
    """
    if n < 1 or n > 64:
        raise ValueError("order must be in 1..64")
    if len(cells) != n * n:
        raise ValueError("cells must have n*n entries")
    full = (1 << n) - 1
    grid = [0] * (n * n)
    rowfree = [full] * n   # symbols still missing from row r
    colfree = [full] * n   # symbols still missing from column c
    rowempty = [full] * n  # empty columns of row r
    colempty = [full] * n  # empty rows of column c
    symcol = [full] * n    # columns that do not yet hold symbol s
    symrow = [full] * n    # rows that do not yet hold symbol s
    state = {"nodes": 0, "empty": n * n}

    def place(r, c, s):
        grid[r * n + c] = s + 1
        rowfree[r] ^= 1 << s
        colfree[c] ^= 1 << s
        rowempty[r] ^= 1 << c
        colempty[c] ^= 1 << r
        symcol[s] ^= 1 << c
        symrow[s] ^= 1 << r
        state["empty"] -= 1

    def unplace(r, c, s):
        grid[r * n + c] = 0
        rowfree[r] |= 1 << s
        colfree[c] |= 1 << s
        rowempty[r] |= 1 << c
        colempty[c] |= 1 << r
        symcol[s] |= 1 << c
        symrow[s] |= 1 << r
        state["empty"] += 1

    for idx, v in enumerate(cells):
        if v == 0:
            continue
        r, c, s = idx // n, idx % n, v - 1
        if not 0 <= s < n:
            raise ValueError(f"symbol {v} out of range")
        if not (rowfree[r] >> s) & 1 or not (colfree[c] >> s) & 1:
            return EXHAUSTED, None, 0
        place(r, c, s)

    def choose():
        # Smallest branching constraint; kind 0 = cell, 1 = (row, symbol),
        # 2 = (column, symbol).  Count 0 means dead end.
        best = n + 1
        pick = (0, 0, 0, 0)
        for r in range(n):
            em = rowempty[r]
            while em:
                low = em & -em
                c = low.bit_length() - 1
                em ^= low
                opts = rowfree[r] & colfree[c]
                cnt = opts.bit_count()
                if cnt < best:
                    best = cnt
                    pick = (0, r, c, opts)
                    if cnt <= 1:
                        return best, pick
        for r in range(n):
            fr = rowfree[r]
            while fr:
                low = fr & -fr
                s = low.bit_length() - 1
                fr ^= low
                opts = rowempty[r] & symcol[s]
                cnt = opts.bit_count()
                if cnt < best:
                    best = cnt
                    pick = (1, r, s, opts)
                    if cnt <= 1:
                        return best, pick
        for c in range(n):
            fc = colfree[c]
            while fc:
                low = fc & -fc
                s = low.bit_length() - 1
                fc ^= low
                opts = colempty[c] & symrow[s]
                cnt = opts.bit_count()
                if cnt < best:
                    best = cnt
                    pick = (2, c, s, opts)
                    if cnt <= 1:
                        return best, pick
        return best, pick

    def rec():
        if state["empty"] == 0:
            return True
        best, (kind, a, b, opts) = choose()
        if best == 0:
            return False
        while opts:
            low = opts & -opts
            x = low.bit_length() - 1
            opts ^= low
            if kind == 0:
                r, c, s = a, b, x
            elif kind == 1:
                r, c, s = a, x, b
            else:
                r, c, s = x, a, b
            state["nodes"] += 1
            if node_limit and state["nodes"] > node_limit:
                raise _LimitHit
            if deadline and not (state["nodes"] & _TIME_CHECK_MASK):
                if time.monotonic() > deadline:
                    raise _LimitHit
            place(r, c, s)
            if rec():
                return True
            unplace(r, c, s)
        return False

    try:
        ok = rec()
    except _LimitHit:
        return LIMIT, None, state["nodes"]
    if ok:
        return FOUND, grid, state["nodes"]
    return EXHAUSTED, None, state["nodes"]


def perfect_matching(n, adj):
    """Perfect matching of a bipartite graph on ``n + n`` vertices.

    ``adj[r]`` is the ascending list of right vertices adjacent to left
    vertex ``r``.  Returns ``match[r]`` (right vertex matched to ``r``) or
    ``None`` when no perfect matching exists.  Augmenting paths are explored
    depth first, lowest index first, so the result is deterministic.
    """
    match_right = [-1] * n
    seen = [-1] * n
    for root in range(n):
        # iterative DFS; stack holds (left vertex, next neighbour position)
        stack = [[root, 0]]
        via = []
        found = False
        while stack:
            top = stack[-1]
            r, pos = top
            nbrs = adj[r]
            advanced = False
            while pos < len(nbrs):
                c = nbrs[pos]
                pos += 1
                if seen[c] == root:
                    continue
                seen[c] = root
                top[1] = pos
                if match_right[c] < 0:
                    via.append(c)
                    found = True
                else:
                    via.append(c)
                    stack.append([match_right[c], 0])
                advanced = True
                break
            if found:
                break
            if not advanced:
                stack.pop()
                if via:
                    via.pop()
        if not found:
            return None
        for (r, _), c in zip(stack, via):
            match_right[c] = r
    match = [0] * n
    for c, r in enumerate(match_right):
        match[r] = c
    return match
