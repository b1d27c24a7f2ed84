"""Pure-Python/numpy versions of the compiled kernels.

Same signatures and return layouts as ``_kernels.pyx``.  ``batch_stats`` is
also the vectorised path used for Monte Carlo sampling, where it is shared
by both backends so sampled results do not depend on which one is loaded.
"""

from __future__ import annotations

import itertools
from math import factorial

import numpy as np

CHUNK = 1 << 16


def crossing_pairs(eu, ev) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i < j) of edges that share no vertex."""
    a, b = [], []
    m = len(eu)
    for i in range(m):
        for j in range(i + 1, m):
            if len({eu[i], ev[i], eu[j], ev[j]}) == 4:
                a.append(i)
                b.append(j)
    return np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp)


def batch_stats(pos: np.ndarray, eu, ev, wt, pairs=None):
    """D, C and B2 for each row of ``pos`` (row = positions of vertices 0..n-1)."""
    pos = np.asarray(pos, dtype=np.int64)
    n = pos.shape[1]
    eu = np.asarray(eu, dtype=np.intp)
    ev = np.asarray(ev, dtype=np.intp)
    pu = pos[:, eu]
    pv = pos[:, ev]
    lo = np.minimum(pu, pv)
    hi = np.maximum(pu, pv)
    d = hi - lo
    D = d.sum(axis=1)
    B2 = (np.asarray(wt, dtype=np.int64) * (n - d) * d).sum(axis=1)
    if pairs is None:
        pairs = crossing_pairs(list(eu), list(ev))
    ia, ib = pairs
    C = np.zeros(pos.shape[0], dtype=np.int64)
    if len(ia):
        l1, h1, l2, h2 = lo[:, ia], hi[:, ia], lo[:, ib], hi[:, ib]
        cross = ((l1 < l2) & (l2 < h1) & (h1 < h2)) | ((l2 < l1) & (l1 < h2) & (h2 < h1))
        C = cross.sum(axis=1, dtype=np.int64)
    return D, C, B2


def sweep(n, eu, ev, wt, prefix=()):
    m = len(eu)
    ccols = m * (m - 1) // 2 + 1
    drows = n * n + 1
    hist = np.zeros((drows, ccols), dtype=np.int64)
    b2sum = np.zeros(drows, dtype=np.int64)
    prefix = [int(v) for v in prefix]
    rest_vertices = np.array([v for v in range(n) if v not in prefix], dtype=np.intp)
    k = len(prefix)
    free_positions = range(k, n)
    pairs = crossing_pairs(list(eu), list(ev))
    total = factorial(n - k)
    perms = itertools.permutations(free_positions)
    done = 0
    while done < total:
        size = min(CHUNK, total - done)
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(perms, size)),
            dtype=np.int64,
            count=size * (n - k),
        )
        pos = np.empty((size, n), dtype=np.int64)
        for i, v in enumerate(prefix):
            pos[:, v] = i
        if n - k:
            pos[:, rest_vertices] = flat.reshape(size, n - k)
        D, C, B2 = batch_stats(pos, eu, ev, wt, pairs)
        np.add.at(hist, (D, C), 1)
        np.add.at(b2sum, D, B2)
        done += size
    return hist, b2sum


def _popcount(x: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int32)
    x = x.astype(np.uint64)
    out = np.zeros(x.shape, dtype=np.int32)
    while np.any(x):
        out += (x & 1).astype(np.int32)
        x >>= np.uint64(1)
    return out


def cut_dp(n, adj, maximize=False):
    size = 1 << n
    full = size - 1
    deg = [bin(a).count("1") for a in adj]
    cut = np.zeros(1, dtype=np.int32)
    # cut[S + 2^v] for S < 2^v: adding v adds its edges leaving S, removes those into S
    for v in range(n):
        idx = np.arange(1 << v, dtype=np.int64)
        inner = _popcount(idx & adj[v])
        cut = np.concatenate([cut, cut + deg[v] - 2 * inner]).astype(np.int32)
    gain = cut.copy()
    gain[full] = 0
    best = np.zeros(size, dtype=np.int32)
    subsets = np.arange(size, dtype=np.int64)
    layer_of = _popcount(subsets)
    order = np.argsort(layer_of, kind="stable")
    bounds = np.searchsorted(layer_of[order], np.arange(n + 2))
    for k in range(n - 1, -1, -1):
        S = order[bounds[k]:bounds[k + 1]]
        acc = None
        for v in range(n):
            bit = 1 << v
            T = S | bit
            cand = (best[T] + gain[T]).astype(np.int64)
            blocked = (S & bit) != 0
            cand[blocked] = np.iinfo(np.int64).min if maximize else np.iinfo(np.int64).max
            if acc is None:
                acc = cand
            else:
                acc = np.maximum(acc, cand) if maximize else np.minimum(acc, cand)
        best[S] = acc
    return cut, best
