# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the exhaustive searches.

Vertices are 0-based here; the public modules translate from 1..n labels.
Both entry points mirror :mod:`depcross._fallback` exactly, including the
layout of the returned arrays.
"""

import numpy as np
cimport numpy as cnp

from libc.stdlib cimport malloc, free

cnp.import_array()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef struct SweepState:
    int n
    int m
    int *nbr_ptr      # CSR offsets into nbr / nbr_edge
    int *nbr
    int *nbr_edge
    long long *wt     # n - k_u - k_v per edge
    int *pos          # position of each vertex, -1 if unplaced
    int *seq          # vertex at each position
    int *lo           # endpoints (positions) of completed edges, stacked
    int *hi
    int ndone
    long long D
    long long C
    long long B2
    int ccols
    long long *hist   # hist[D * ccols + C]
    long long *b2sum  # b2sum[D]


cdef void _place(SweepState *s, int p) noexcept nogil:
    cdef int v, j, u, q, d, e, k, lo, hi
    cdef int saved_ndone
    cdef long long saved_D, saved_C, saved_B2
    if p == s.n:
        s.hist[s.D * s.ccols + s.C] += 1
        s.b2sum[s.D] += s.B2
        return
    for v in range(s.n):
        if s.pos[v] >= 0:
            continue
        saved_ndone = s.ndone
        saved_D = s.D
        saved_C = s.C
        saved_B2 = s.B2
        s.pos[v] = p
        s.seq[p] = v
        for j in range(s.nbr_ptr[v], s.nbr_ptr[v + 1]):
            u = s.nbr[j]
            q = s.pos[u]
            if q < 0:
                continue
            d = p - q
            e = s.nbr_edge[j]
            s.D += d
            s.B2 += s.wt[e] * (s.n - d) * d
            # earlier edges all end before p, so only lo < q < hi can cross
            for k in range(saved_ndone):
                lo = s.lo[k]
                hi = s.hi[k]
                if lo < q and q < hi:
                    s.C += 1
            s.lo[s.ndone] = q
            s.hi[s.ndone] = p
            s.ndone += 1
        _place(s, p + 1)
        s.pos[v] = -1
        s.ndone = saved_ndone
        s.D = saved_D
        s.C = saved_C
        s.B2 = saved_B2


def sweep(int n, eu, ev, wt, prefix=()):
    """Histogram of (D, C) and per-D sums of B2 over all arrangements.

    Arrangements are sequences extending ``prefix`` (vertices occupying the
    first positions).  Returns ``(hist, b2sum)`` with ``hist[D, C]`` the
    number of arrangements and ``b2sum[D]`` the summed B2 term.
    """
    cdef int m = len(eu)
    cdef int ccols = m * (m - 1) // 2 + 1
    cdef int drows = n * n + 1
    cdef cnp.ndarray[cnp.int64_t, ndim=2] hist = np.zeros((drows, ccols), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] b2sum = np.zeros(drows, dtype=np.int64)
    cdef SweepState s
    cdef int i, v, a, b, idx, start
    cdef int[:] deg

    s.n = n
    s.m = m
    s.ccols = ccols
    s.hist = <long long *> hist.data
    s.b2sum = <long long *> b2sum.data
    s.nbr_ptr = <int *> malloc((n + 1) * sizeof(int))
    s.nbr = <int *> malloc((2 * m + 1) * sizeof(int))
    s.nbr_edge = <int *> malloc((2 * m + 1) * sizeof(int))
    s.wt = <long long *> malloc((m + 1) * sizeof(long long))
    s.pos = <int *> malloc((n + 1) * sizeof(int))
    s.seq = <int *> malloc((n + 1) * sizeof(int))
    s.lo = <int *> malloc((m + 1) * sizeof(int))
    s.hi = <int *> malloc((m + 1) * sizeof(int))
    try:
        deg = np.zeros(n, dtype=np.intc)
        for i in range(m):
            deg[eu[i]] += 1
            deg[ev[i]] += 1
            s.wt[i] = wt[i]
        s.nbr_ptr[0] = 0
        for v in range(n):
            s.nbr_ptr[v + 1] = s.nbr_ptr[v] + deg[v]
        fill = [s.nbr_ptr[v] for v in range(n)]
        for i in range(m):
            a = eu[i]
            b = ev[i]
            idx = fill[a]
            s.nbr[idx] = b
            s.nbr_edge[idx] = i
            fill[a] = idx + 1
            idx = fill[b]
            s.nbr[idx] = a
            s.nbr_edge[idx] = i
            fill[b] = idx + 1
        for v in range(n):
            s.pos[v] = -1
        s.ndone = 0
        s.D = 0
        s.C = 0
        s.B2 = 0
        # replay the prefix through the same incremental bookkeeping
        for i, v in enumerate(prefix):
            _seed(&s, v, i)
        start = len(prefix)
        with nogil:
            _place(&s, start)
    finally:
        free(s.nbr_ptr)
        free(s.nbr)
        free(s.nbr_edge)
        free(s.wt)
        free(s.pos)
        free(s.seq)
        free(s.lo)
        free(s.hi)
    return hist, b2sum


cdef void _seed(SweepState *s, int v, int p):
    cdef int j, u, q, d, e, k, base
    s.pos[v] = p
    s.seq[p] = v
    base = s.ndone
    for j in range(s.nbr_ptr[v], s.nbr_ptr[v + 1]):
        u = s.nbr[j]
        q = s.pos[u]
        if q < 0:
            continue
        d = p - q
        e = s.nbr_edge[j]
        s.D += d
        s.B2 += s.wt[e] * (s.n - d) * d
        for k in range(base):
            if s.lo[k] < q and q < s.hi[k]:
                s.C += 1
        s.lo[s.ndone] = q
        s.hi[s.ndone] = p
        s.ndone += 1


def cut_dp(int n, adj, bint maximize=False):
    """Optimal completion costs over vertex subsets.

    ``adj[v]`` is the neighbour bitmask of vertex ``v``.  The sum of edge
    lengths of an arrangement equals the sum of the cut sizes of its proper
    prefixes, so ``best[S]`` is the optimum over orderings of the vertices
    outside ``S`` placed after the prefix set ``S``.  Returns ``(cut, best)``.
    """
    cdef Py_ssize_t full = (1 << n) - 1
    cdef Py_ssize_t size = 1 << n
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cut = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] best = np.zeros(size, dtype=np.int32)
    cdef int[:] deg = np.zeros(n, dtype=np.intc)
    cdef long long[:] nb = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t S, T
    cdef int v, low, c, cand, b
    cdef long long x
    for v in range(n):
        nb[v] = adj[v]
        deg[v] = bin(adj[v]).count("1")
    with nogil:
        for S in range(1, size):
            x = S & (-S)
            low = 0
            while (x >> low) != 1:
                low += 1
            T = S ^ x
            c = _popcount(nb[low] & T)
            cut[S] = cut[T] + deg[low] - 2 * c
        best[full] = 0
        for S in range(full - 1, -1, -1):
            b = -1
            for v in range(n):
                if (S >> v) & 1:
                    continue
                T = S | (1 << v)
                cand = best[T] + (cut[T] if T != full else 0)
                if b < 0 or (maximize and cand > b) or (not maximize and cand < b):
                    b = cand
            best[S] = b
    return cut, best


cdef inline int _popcount(long long x) noexcept nogil:
    return __builtin_popcountll(x)

