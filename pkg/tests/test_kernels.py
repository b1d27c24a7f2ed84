import numpy as np
import pytest

from depcross import _fallback, kernels
from depcross.ensembles import _edge_arrays, prufer_decode

compiled = pytest.mark.skipif(not kernels.COMPILED, reason="compiled kernels not built")

TREES = [prufer_decode(s, len(s) + 2) for s in ([1, 1, 1], [2, 3, 4, 5], [6, 6, 2, 2, 3], [1, 7, 7, 3, 3, 5])]


@compiled
@pytest.mark.parametrize("t", TREES, ids=lambda t: f"n{t.n}")
def test_sweep_parity(t):
    args = (t.n, *_edge_arrays(t))
    for prefix in ((), (0,), (2, 1)):
        h1, b1 = kernels.sweep(*args, prefix, backend="cython")
        h2, b2 = kernels.sweep(*args, prefix, backend="python")
        assert np.array_equal(h1, h2) and np.array_equal(b1, b2)


@compiled
@pytest.mark.parametrize("t", TREES, ids=lambda t: f"n{t.n}")
def test_cut_dp_parity(t):
    adj = [0] * t.n
    for u, v in t.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    for maximize in (False, True):
        c1, b1 = kernels.cut_dp(t.n, adj, maximize, backend="cython")
        c2, b2 = kernels.cut_dp(t.n, adj, maximize, backend="python")
        assert np.array_equal(c1, c2) and np.array_equal(b1, b2)


def test_prefixes_partition_the_sweep():
    t = TREES[2]
    args = (t.n, *_edge_arrays(t))
    whole, _ = _fallback.sweep(*args, ())
    parts = sum(_fallback.sweep(*args, (v,))[0] for v in range(t.n))
    assert np.array_equal(whole, parts)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.sweep(3, [0, 1], [1, 2], [1, 1], backend="fortran")
