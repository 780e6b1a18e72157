# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors ``_purekernel`` exactly."""
import time

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 64

cdef enum:
    FOUND = 1
    EXHAUSTED = 0
    LIMIT = -1

cdef struct State:
    int n
    int empty
    long long nodes
    long long node_limit
    double deadline
    int limit_hit
    int grid[MAXN * MAXN]
    u64 rowfree[MAXN]
    u64 colfree[MAXN]
    u64 rowempty[MAXN]
    u64 colempty[MAXN]
    u64 symcol[MAXN]
    u64 symrow[MAXN]


cdef inline void _place(State* st, int r, int c, int s) nogil:
    cdef u64 bs = (<u64>1) << s
    st.grid[r * st.n + c] = s + 1
    st.rowfree[r] ^= bs
    st.colfree[c] ^= bs
    st.rowempty[r] ^= (<u64>1) << c
    st.colempty[c] ^= (<u64>1) << r
    st.symcol[s] ^= (<u64>1) << c
    st.symrow[s] ^= (<u64>1) << r
    st.empty -= 1


cdef inline void _unplace(State* st, int r, int c, int s) nogil:
    cdef u64 bs = (<u64>1) << s
    st.grid[r * st.n + c] = 0
    st.rowfree[r] |= bs
    st.colfree[c] |= bs
    st.rowempty[r] |= (<u64>1) << c
    st.colempty[c] |= (<u64>1) << r
    st.symcol[s] |= (<u64>1) << c
    st.symrow[s] |= (<u64>1) << r
    st.empty += 1


cdef int _choose(State* st, int* kind, int* a, int* b, u64* opts) nogil:
    cdef int n = st.n
    cdef int best = n + 1
    cdef int r, c, s, cnt
    cdef u64 em, fr, o
    for r in range(n):
        em = st.rowempty[r]
        while em:
            c = __builtin_ctzll(em)
            em &= em - 1
            o = st.rowfree[r] & st.colfree[c]
            cnt = __builtin_popcountll(o)
            if cnt < best:
                best = cnt
                kind[0] = 0; a[0] = r; b[0] = c; opts[0] = o
                if cnt <= 1:
                    return best
    for r in range(n):
        fr = st.rowfree[r]
        while fr:
            s = __builtin_ctzll(fr)
            fr &= fr - 1
            o = st.rowempty[r] & st.symcol[s]
            cnt = __builtin_popcountll(o)
            if cnt < best:
                best = cnt
                kind[0] = 1; a[0] = r; b[0] = s; opts[0] = o
                if cnt <= 1:
                    return best
    for c in range(n):
        fr = st.colfree[c]
        while fr:
            s = __builtin_ctzll(fr)
            fr &= fr - 1
            o = st.colempty[c] & st.symrow[s]
            cnt = __builtin_popcountll(o)
            if cnt < best:
                best = cnt
                kind[0] = 2; a[0] = c; b[0] = s; opts[0] = o
                if cnt <= 1:
                    return best
    return best


cdef int _rec(State* st) except -2:
    cdef int kind = 0, a = 0, b = 0, x, r, c, s, best
    cdef u64 opts = 0
    if st.empty == 0:
        return 1
    best = _choose(st, &kind, &a, &b, &opts)
    if best == 0:
        return 0
    while opts:
        x = __builtin_ctzll(opts)
        opts &= opts - 1
        if kind == 0:
            r = a; c = b; s = x
        elif kind == 1:
            r = a; c = x; s = b
        else:
            r = x; c = a; s = b
        st.nodes += 1
        if st.node_limit and st.nodes > st.node_limit:
            st.limit_hit = 1
            return 0
        if st.deadline and not (st.nodes & 1023):
            if time.monotonic() > st.deadline:
                st.limit_hit = 1
                return 0
        _place(st, r, c, s)
        if _rec(st):
            return 1
        if st.limit_hit:
            return 0
        _unplace(st, r, c, s)
    return 0


def search(int n, cells, long long node_limit=0, double deadline=0.0):
    """Complete a partial latin square; see ``_purekernel.search``."""
    cdef State* st
    cdef int idx, v, r, c, s, ok
    cdef u64 full
    if n < 1 or n > MAXN:
        raise ValueError("order must be in 1..64")
    if len(cells) != n * n:
        raise ValueError("cells must have n*n entries")
    st = <State*> malloc(sizeof(State))
    if st == NULL:
        raise MemoryError()
    try:
        full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
        st.n = n
        st.empty = n * n
        st.nodes = 0
        st.node_limit = node_limit
        st.deadline = deadline
        st.limit_hit = 0
        for idx in range(n * n):
            st.grid[idx] = 0
        for idx in range(n):
            st.rowfree[idx] = full
            st.colfree[idx] = full
            st.rowempty[idx] = full
            st.colempty[idx] = full
            st.symcol[idx] = full
            st.symrow[idx] = full
        for idx in range(n * n):
            v = cells[idx]
            if v == 0:
                continue
            r = idx // n
            c = idx % n
            s = v - 1
            if s < 0 or s >= n:
                raise ValueError(f"symbol {v} out of range")
            if not ((st.rowfree[r] >> s) & 1) or not ((st.colfree[c] >> s) & 1):
                return EXHAUSTED, None, 0
            _place(st, r, c, s)
        ok = _rec(st)
        if st.limit_hit:
            return LIMIT, None, st.nodes
        if ok:
            return FOUND, [st.grid[idx] for idx in range(n * n)], st.nodes
        return EXHAUSTED, None, st.nodes
    finally:
        free(st)


def perfect_matching(int n, adj):
    """Perfect matching of a bipartite graph; see ``_purekernel.perfect_matching``."""
    cdef list match_right = [-1] * n
    cdef list seen = [-1] * n
    cdef list stack, via, top
    cdef int root, r, pos, c, found, advanced
    for root in range(n):
        stack = [[root, 0]]
        via = []
        found = 0
        while stack:
            top = stack[len(stack) - 1]
            r = top[0]
            pos = top[1]
            nbrs = adj[r]
            advanced = 0
            while pos < len(nbrs):
                c = nbrs[pos]
                pos += 1
                if seen[c] == root:
                    continue
                seen[c] = root
                top[1] = pos
                via.append(c)
                if match_right[c] < 0:
                    found = 1
                else:
                    stack.append([match_right[c], 0])
                advanced = 1
                break
            if found:
                break
            if not advanced:
                stack.pop()
                if via:
                    via.pop()
        if not found:
            return None
        for idx in range(len(via)):
            match_right[via[idx]] = stack[idx][0]
    match = [0] * n
    for c in range(n):
        match[match_right[c]] = c
    return match
