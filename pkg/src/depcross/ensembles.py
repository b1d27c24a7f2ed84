"""Random and exhaustive ensembles of trees and arrangements.

Covers uniform random labeled trees (Aldous-Broder walk on the complete
graph), Prüfer enumeration of all labeled trees, and the permutation
ensemble behind E[C|D]: for each reachable sum of lengths D, the number of
arrangements R and the distribution of crossings among them.
"""

from __future__ import annotations

import heapq
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from ._fallback import batch_stats, crossing_pairs
from .arrangement import LinearArrangement
from .errors import DepcrossError, TooLarge, UnreachableD
from .tree import Tree

RNG_ALGORITHM = "numpy Philox-4x64, SeedSequence(entropy=seed, spawn_key=(stream, worker))"
DEFAULT_SEED = 20140101
MAX_EXHAUSTIVE_N = 10
MAX_ENUMERATED_TREES_N = 8
BATCH = 100_000


class InsufficientSamples(DepcrossError):
    """Monte Carlo sampling produced no arrangement with the requested D."""


@dataclass(frozen=True)
class RandomSeed:
    """Seed plus stream id; equal pairs reproduce identical draws."""

    seed: int = DEFAULT_SEED
    stream: int = 0

    def generator(self, worker: int = 0) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed & (2**64 - 1), spawn_key=(self.stream, worker))
        return np.random.Generator(np.random.Philox(ss))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RandomSeed):
        return rng.generator()
    if rng is None:
        return RandomSeed().generator()
    return RandomSeed(int(rng)).generator()


# ---------------------------------------------------------------- random trees

def _aldous_broder(n: int, rng: np.random.Generator, block: int = 256) -> list[tuple[int, int]]:
    """Edges (0-based) of a uniform spanning tree of K_n from a random walk.

    Each first entrance into a vertex contributes the edge it came along.
    """
    if n == 1:
        return []
    visited = bytearray(n)
    cur = int(rng.integers(n))
    visited[cur] = 1
    seen = 1
    edges = []
    steps = rng.integers(n - 1, size=block).tolist()
    i = 0
    while seen < n:
        if i == block:
            steps = rng.integers(n - 1, size=block).tolist()
            i = 0
        nxt = steps[i]
        i += 1
        if nxt >= cur:
            nxt += 1  # uniform over the other n - 1 vertices
        if not visited[nxt]:
            visited[nxt] = 1
            seen += 1
            edges.append((cur, nxt))
        cur = nxt
    return edges


def random_labeled_tree(n: int, rng=None) -> Tree:
    """Uniformly random labeled tree on ``1..n``.

    ``rng`` may be a numpy Generator, a :class:`RandomSeed` or an int seed.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gen = _as_generator(rng)
    return Tree(n, tuple((u + 1, v + 1) for u, v in _aldous_broder(n, gen)))


@dataclass(frozen=True)
class SampledMean:
    mean: float
    se: float
    samples: int


def sample_e0_random_labeled(n: int, samples: int, seed: RandomSeed | int = DEFAULT_SEED) -> SampledMean:
    """Monte Carlo mean of E0[C] over Aldous-Broder trees, with its standard error."""
    gen = _as_generator(seed)
    vals = np.empty(samples, dtype=np.float64)
    for s in range(samples):
        deg = [0] * n
        for u, v in _aldous_broder(n, gen):
            deg[u] += 1
            deg[v] += 1
        K2 = sum(k * k for k in deg)
        vals[s] = n * (n - 1 - K2 / n) / 6
    se = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else float("nan")
    return SampledMean(float(vals.mean()), se, samples)


# ------------------------------------------------------------- enumeration

def prufer_decode(seq: Sequence[int], n: int) -> Tree:
    """Labeled tree on ``1..n`` whose Prüfer sequence is ``seq`` (length n - 2)."""
    if n == 1:
        return Tree(1, ())
    if len(seq) != n - 2:
        raise ValueError(f"Prüfer sequence for n={n} must have length {n - 2}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Tree(n, tuple(edges))


def enumerate_labeled_trees(n: int, max_n: int = MAX_ENUMERATED_TREES_N) -> Iterator[Tree]:
    """All n^(n-2) labeled trees on ``1..n``, in lexicographic Prüfer order."""
    if n > max_n:
        raise TooLarge(f"enumerating {n}^{n - 2} labeled trees exceeds the bound n <= {max_n}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n <= 2:
        yield Tree(n, ((1, 2),) if n == 2 else ())
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)


def _canonical(adj: list[list[int]]) -> str:
    """Isomorphism-invariant code of an unlabeled tree (AHU encoding from its center)."""
    n = len(adj)
    if n == 1:
        return "()"
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt

    def code(v, parent):
        return "(" + "".join(sorted(code(w, v) for w in adj[v] if w != parent)) + ")"

    return min(code(c, -1) for c in layer) if len(layer) == 1 else min(
        code(layer[0], layer[1]) + code(layer[1], layer[0]),
        code(layer[1], layer[0]) + code(layer[0], layer[1]),
    )


def enumerate_unlabeled_trees(n: int, max_n: int = 14) -> list[Tree]:
    """One representative per isomorphism class of trees on ``n`` vertices.

    Grown by attaching a leaf to every vertex of every smaller tree and
    keeping one tree per canonical code; the count matches
    :func:`~depcross.tree.unlabeled_tree_count`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > max_n:
        raise TooLarge(f"unlabeled enumeration limited to n <= {max_n}")
    level = {"()": [[]]}
    for size in range(2, n + 1):
        nxt = {}
        for adj in level.values():
            for v in range(size - 1):
                grown = [list(a) for a in adj] + [[v]]
                grown[v].append(size - 1)
                key = _canonical(grown)
                if key not in nxt:
                    nxt[key] = grown
        level = nxt
    out = []
    for key in sorted(level):
        adj = level[key]
        edges = tuple((u + 1, w + 1) for u in range(n) for w in adj[u] if u < w)
        out.append(Tree(n, edges))
    return out


def _edge_arrays(t: Tree):
    eu = [u - 1 for u, _ in t.edges]
    ev = [v - 1 for _, v in t.edges]
    deg = t.degrees
    wt = [t.n - deg[u] - deg[v] for u, v in zip(eu, ev)]
    return eu, ev, wt


def enumerate_arrangements(t: Tree, max_n: int = MAX_EXHAUSTIVE_N) -> Iterator[tuple[LinearArrangement, int, int]]:
    """Every arrangement of ``t`` with its crossings C and sum of lengths D.

    Arrangements come in lexicographic order of ``pi``.
    """
    n = t.n
    if n > max_n:
        raise TooLarge(f"{n}! arrangements exceed the exhaustive bound n <= {max_n}; sample instead")
    eu, ev, wt = _edge_arrays(t)
    pairs = crossing_pairs(eu, ev)
    perms = itertools.permutations(range(1, n + 1))
    while True:
        chunk = list(itertools.islice(perms, 4096))
        if not chunk:
            return
        D, C, _ = batch_stats(np.asarray(chunk, dtype=np.int64).reshape(len(chunk), n), eu, ev, wt, pairs)
        for pi, c, d in zip(chunk, C.tolist(), D.tolist()):
            yield LinearArrangement(pi), c, d


# ------------------------------------------------------ permutation ensemble

@dataclass
class DStats:
    """Arrangements sharing one value of D."""

    R: int
    dist: dict[int, int]
    sum_B2: int

    @property
    def mean_C(self) -> Fraction:
        return Fraction(sum(c * k for c, k in self.dist.items()), self.R)


@dataclass(frozen=True)
class PermutationEnsembleResult:
    """Per-D statistics over all (or sampled) arrangements of one tree.

    In Monte Carlo mode ``DStats.R`` counts accepted samples; use
    :meth:`estimated_R` for the implied number of permutations.
    """

    n: int
    per_D: dict[int, DStats]
    total_permutations: int
    method: str
    B1: int
    samples: int | None = None
    seed: int | None = None
    rng: str | None = None
    backend: str | None = None

    @property
    def exhaustive(self) -> bool:
        return self.method == "exhaustive"

    @property
    def D_values(self) -> list[int]:
        return sorted(self.per_D)

    def R(self, D: int) -> int:
        s = self.per_D.get(D)
        return s.R if s else 0

    def estimated_R(self, D: int) -> float:
        if self.exhaustive:
            return float(self.R(D))
        return math.factorial(self.n) * self.R(D) / self.total_permutations

    def mean_C(self, D: int) -> Fraction:
        return self._get(D).mean_C

    def se_C(self, D: int) -> float:
        """Standard error of the sampled mean; 0 in exhaustive mode."""
        s = self._get(D)
        if self.exhaustive:
            return 0.0
        if s.R < 2:
            return float("nan")
        m = float(s.mean_C)
        var = sum(k * (c - m) ** 2 for c, k in s.dist.items()) / (s.R - 1)
        return math.sqrt(var / s.R)

    def mean_E1(self, D: int) -> Fraction:
        """Average E1[C] over the arrangements with this D."""
        s = self._get(D)
        if self.n < 4:
            return Fraction(0)
        return (Fraction(s.sum_B2, s.R) - self.B1) / ((self.n - 2) * (self.n - 3))

    def distribution(self, D: int) -> dict[int, int]:
        return dict(sorted(self._get(D).dist.items()))

    def overall_mean_C(self) -> Fraction:
        tot = sum(s.R for s in self.per_D.values())
        return Fraction(sum(s.mean_C * s.R for s in self.per_D.values()), tot)

    def overall_mean_D(self) -> Fraction:
        tot = sum(s.R for s in self.per_D.values())
        return Fraction(sum(D * s.R for D, s in self.per_D.items()), tot)

    def _get(self, D: int) -> DStats:
        s = self.per_D.get(D)
        if s is None or s.R == 0:
            if self.exhaustive:
                raise UnreachableD(f"no arrangement of this tree has D = {D}")
            raise InsufficientSamples(
                f"none of the {self.total_permutations} sampled arrangements has D = {D}"
            )
        return s


def _per_D(hist: np.ndarray, b2sum: np.ndarray) -> dict[int, DStats]:
    out = {}
    for D in np.nonzero(hist.sum(axis=1))[0].tolist():
        row = hist[D]
        cs = np.nonzero(row)[0].tolist()
        out[D] = DStats(int(row.sum()), {c: int(row[c]) for c in cs}, int(b2sum[D]))
    return out


def _sweep_job(args):
    n, eu, ev, wt, prefix, backend = args
    return kernels.sweep(n, eu, ev, wt, prefix, backend=backend)


def _b1(t: Tree) -> int:
    K2 = sum(k * k for k in t.degrees)
    return (t.n - 1) * (t.n * (t.n - 1) - K2)


def permutation_ensemble(
    t: Tree,
    *,
    max_exhaustive_n: int = MAX_EXHAUSTIVE_N,
    samples: int = 1_000_000,
    seed: RandomSeed | int = DEFAULT_SEED,
    workers: int = 1,
    backend: str | None = None,
    force: str | None = None,
) -> PermutationEnsembleResult:
    """Statistics of C and E1[C] grouped by D over the arrangements of ``t``.

    Exhaustive for ``n <= max_exhaustive_n`` (or ``force="exhaustive"``),
    otherwise ``samples`` uniform permutations.  The exhaustive sweep is
    split by the vertex in the first position; partial histograms are
    summed, so the result is independent of ``workers``.
    """
    n = t.n
    mode = force or ("exhaustive" if n <= max_exhaustive_n else "monte_carlo")
    if mode == "exhaustive":
        return _exhaustive(t, workers, backend)
    if mode == "monte_carlo":
        return _monte_carlo(t, samples, seed if isinstance(seed, RandomSeed) else RandomSeed(int(seed)))
    raise ValueError(f"unknown mode {mode!r}")


def _exhaustive(t, workers, backend):
    n = t.n
    eu, ev, wt = _edge_arrays(t)
    if workers > 1 and n > 2:
        jobs = [(n, eu, ev, wt, (v,), backend) for v in range(n)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_job, jobs))
        hist = sum(p[0] for p in parts)
        b2sum = sum(p[1] for p in parts)
    else:
        hist, b2sum = kernels.sweep(n, eu, ev, wt, (), backend=backend)
    return PermutationEnsembleResult(
        n=n,
        per_D=_per_D(hist, b2sum),
        total_permutations=math.factorial(n),
        method="exhaustive",
        B1=_b1(t),
        backend=backend or kernels.BACKEND,
    )


def _monte_carlo(t, samples, seed: RandomSeed):
    n = t.n
    if samples < 1:
        raise ValueError("samples must be >= 1")
    eu, ev, wt = _edge_arrays(t)
    pairs = crossing_pairs(eu, ev)
    m = len(eu)
    hist = np.zeros((n * n + 1, m * (m - 1) // 2 + 1), dtype=np.int64)
    b2sum = np.zeros(n * n + 1, dtype=np.int64)
    gen = seed.generator()
    base = np.arange(n, dtype=np.int64)
    done = 0
    while done < samples:
        size = min(BATCH, samples - done)
        pos = gen.permuted(np.broadcast_to(base, (size, n)), axis=1)
        D, C, B2 = batch_stats(pos, eu, ev, wt, pairs)
        np.add.at(hist, (D, C), 1)
        np.add.at(b2sum, D, B2)
        done += size
    return PermutationEnsembleResult(
        n=n,
        per_D=_per_D(hist, b2sum),
        total_permutations=samples,
        method="monte_carlo",
        B1=_b1(t),
        samples=samples,
        seed=seed.seed,
        rng=RNG_ALGORITHM,
    )


@dataclass(frozen=True)
class SampledLengthBounds:
    """Smallest and largest D seen among sampled arrangements.

    Not exact: the true D_min is at most ``low`` and D_max at least ``high``.
    """

    low: int
    high: int
    samples: int
    seed: int
    exact: bool = False


def sampled_length_bounds(t: Tree, samples: int = 100_000,
                          seed: RandomSeed | int = DEFAULT_SEED) -> SampledLengthBounds:
    """Monte Carlo bracket of D for trees beyond the exact solver's size limit."""
    seed = seed if isinstance(seed, RandomSeed) else RandomSeed(int(seed))
    ens = permutation_ensemble(t, force="monte_carlo", samples=samples, seed=seed)
    Ds = ens.D_values
    return SampledLengthBounds(Ds[0], Ds[-1], samples, seed.seed)


@dataclass(frozen=True)
class ConditionalCrossings:
    D: int
    mean_C: Fraction
    R: int
    distribution: dict[int, int]
    se: float
    method: str


def conditional_crossings(t: Tree, D_target: int, ensemble: PermutationEnsembleResult | None = None,
                          **kwargs) -> ConditionalCrossings:
    """E[C|D]: mean crossings over the arrangements whose sum of lengths is ``D_target``."""
    ens = ensemble if ensemble is not None else permutation_ensemble(t, **kwargs)
    mean = ens.mean_C(D_target)
    return ConditionalCrossings(
        D_target, mean, ens.R(D_target), ens.distribution(D_target), ens.se_C(D_target), ens.method
    )


@dataclass(frozen=True)
class CurveRow:
    D: int
    R: int
    mean_C: Fraction
    mean_E1C: Fraction


def c_vs_d_curve(t: Tree, ensemble: PermutationEnsembleResult | None = None,
                 max_n: int = MAX_EXHAUSTIVE_N, **kwargs) -> list[CurveRow]:
    """One row per reachable D: R, E[C|D] and the average E1[C]."""
    if ensemble is None:
        if t.n > max_n:
            raise TooLarge(f"curve for n={t.n} exceeds the exhaustive bound {max_n}; pass a sampled ensemble")
        ensemble = permutation_ensemble(t, max_exhaustive_n=max_n, **kwargs)
    return [CurveRow(D, ensemble.R(D), ensemble.mean_C(D), ensemble.mean_E1(D)) for D in ensemble.D_values]
