"""Linear arrangements of a tree: lengths, crossings and extremal sums of lengths."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .errors import SameVertex, TooLarge
from .tree import Edge, Tree

# subset DP is O(2^n n); 20 keeps it around a second with the compiled kernel
MAX_EXACT_N = 20


@dataclass(frozen=True)
class LinearArrangement:
    """Bijection from vertices ``1..n`` to positions ``1..n``.

    ``pi[v - 1]`` is the position of vertex ``v``.
    """

    pi: tuple[int, ...]

    def __post_init__(self):
        pi = tuple(int(p) for p in self.pi)
        if sorted(pi) != list(range(1, len(pi) + 1)):
            raise ValueError(f"not a bijection onto 1..{len(pi)}: {pi}")
        object.__setattr__(self, "pi", pi)

    @classmethod
    def identity(cls, n: int) -> LinearArrangement:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> LinearArrangement:
        """Arrangement placing ``order[0]`` first, ``order[1]`` second and so on."""
        pi = [0] * len(order)
        for p, v in enumerate(order, start=1):
            pi[v - 1] = p
        return cls(tuple(pi))

    @property
    def n(self) -> int:
        return len(self.pi)

    def position(self, v: int) -> int:
        return self.pi[v - 1]

    @property
    def order(self) -> tuple[int, ...]:
        """Vertices listed by position."""
        seq = [0] * self.n
        for v, p in enumerate(self.pi, start=1):
            seq[p - 1] = v
        return tuple(seq)

    def reversed(self) -> LinearArrangement:
        return LinearArrangement(tuple(self.n + 1 - p for p in self.pi))


def edge_length(arr: LinearArrangement, u: int, v: int) -> int:
    if u == v:
        raise SameVertex(f"edge length needs two distinct vertices, got {u} twice")
    return abs(arr.position(u) - arr.position(v))


def sum_lengths(arr: LinearArrangement, t: Tree) -> int:
    """D, the sum of dependency lengths (identity cost)."""
    _check_size(arr, t)
    return sum(abs(arr.pi[u - 1] - arr.pi[v - 1]) for u, v in t.edges)


def mean_length(arr: LinearArrangement, t: Tree) -> Fraction:
    """D / (n - 1); zero for the single-vertex tree."""
    if t.n < 2:
        return Fraction(0)
    return Fraction(sum_lengths(arr, t), t.n - 1)


def edges_cross(arr: LinearArrangement, e1: Edge, e2: Edge) -> bool:
    """True when exactly one endpoint of ``e2`` lies strictly inside ``e1``.

    Edges sharing a vertex never cross.
    """
    s, t = e2
    u, v = e1
    if len({s, t, u, v}) < 4:
        return False
    lo, hi = sorted((arr.position(u), arr.position(v)))
    ps, pt = arr.position(s), arr.position(t)

    def covered(q):
        return lo < q < hi

    def external(q):
        return q < lo or q > hi

    return (covered(ps) and external(pt)) or (covered(pt) and external(ps))


@dataclass(frozen=True)
class CrossingCount:
    C: int
    per_edge: dict[Edge, int]


def count_crossings(arr: LinearArrangement, t: Tree) -> CrossingCount:
    """Number of crossing edge pairs and, for each edge, how many edges it crosses."""
    _check_size(arr, t)
    pi = arr.pi
    spans = []
    for u, v in t.edges:
        a, b = pi[u - 1], pi[v - 1]
        spans.append((a, b) if a < b else (b, a))
    per_edge = dict.fromkeys(t.edges, 0)
    C = 0
    m = len(spans)
    for i in range(m):
        l1, h1 = spans[i]
        for j in range(i + 1, m):
            l2, h2 = spans[j]
            # interleaving; shared endpoints make one of the strict tests fail
            if (l1 < l2 < h1 < h2) or (l2 < l1 < h2 < h1):
                C += 1
                per_edge[t.edges[i]] += 1
                per_edge[t.edges[j]] += 1
    return CrossingCount(C, per_edge)


def c_max(t: Tree) -> int:
    """Potential number of crossings, n(n - 1 - <k^2>)/2."""
    K2 = sum(k * k for k in t.degrees)
    return (t.n * (t.n - 1) - K2) // 2


def _check_size(arr: LinearArrangement, t: Tree):
    if arr.n != t.n:
        raise ValueError(f"arrangement has {arr.n} positions, tree has {t.n} vertices")


def _extreme(t: Tree, maximize: bool, max_n: int) -> tuple[int, LinearArrangement]:
    n = t.n
    if n > max_n:
        raise TooLarge(
            f"exact {'D_max' if maximize else 'D_min'} is limited to n <= {max_n} (n = {n}); "
            "raise max_n, or use depcross.ensembles.sampled_length_bounds for a sampled, non-exact bracket"
        )
    if n == 1:
        return 0, LinearArrangement.identity(1)
    adj = [0] * n
    for u, v in t.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    cut, best = kernels.cut_dp(n, adj, maximize)
    full = (1 << n) - 1
    # greedy walk picks the smallest vertex that keeps the optimum reachable
    S = 0
    order = []
    while S != full:
        for v in range(n):
            bit = 1 << v
            if S & bit:
                continue
            T = S | bit
            step = int(cut[T]) if T != full else 0
            if step + int(best[T]) == int(best[S]):
                order.append(v + 1)
                S = T
                break
    return int(best[0]), LinearArrangement.from_order(order)


def d_min(t: Tree, max_n: int = MAX_EXACT_N) -> tuple[int, LinearArrangement]:
    """Minimum linear arrangement: exact minimum D and the witness whose
    vertex order is lexicographically smallest."""
    return _extreme(t, False, max_n)


def d_max(t: Tree, max_n: int = MAX_EXACT_N) -> tuple[int, LinearArrangement]:
    """Exact maximum D over all arrangements, with lexicographically smallest witness order."""
    return _extreme(t, True, max_n)


def d_min_noncrossing(t: Tree, max_n: int = 500) -> tuple[int, LinearArrangement]:
    """Minimum D over arrangements without crossings.

    A non-crossing arrangement of a tree is projective once the tree is
    rooted at its leftmost vertex, so the optimum is the best minimum
    projective arrangement over all roots.  For a fixed root the children's
    blocks are independent: each child contributes its own best
    ``cost + distance to the facing end``, and on each side blocks go in
    increasing size outwards, leaving only the left/right split to choose.
    """
    n = t.n
    if n > max_n:
        raise TooLarge(f"non-crossing minimum limited to n <= {max_n} (n = {n})")
    best = None
    for root in range(1, n + 1):
        plan = _ProjectivePlan(t, root)
        cost, a = plan.best_root_offset()
        if best is None or cost < best[0]:
            best = (cost, root, plan, a)
    cost, root, plan, a = best
    order = plan.build(root, a)
    return cost, LinearArrangement.from_order(order)


class _ProjectivePlan:
    """Dynamic programme for minimum projective arrangements of a rooted tree."""

    def __init__(self, t: Tree, root: int):
        self.t = t
        self.root = root
        self.size: dict[int, int] = {}
        self.kids: dict[int, list[int]] = {}
        self.cost: dict[int, list[int]] = {}      # cost[v][a]: a vertices of v's subtree left of v
        self.choice: dict[int, list[dict]] = {}   # back-pointers of the split DP
        self.facing: dict[int, int] = {}          # best distance of v to its block's facing end
        order = []
        parent = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for w in t.adjacency[v]:
                if w != parent[v]:
                    parent[w] = v
                    stack.append(w)
        for v in reversed(order):
            self._solve(v, [w for w in t.adjacency[v] if w != parent[v]])

    def _solve(self, v, children):
        kids = sorted(children, key=lambda c: (self.size[c], c))
        self.kids[v] = kids
        base = 0
        for c in kids:
            f = self.cost[c]
            x = min(range(len(f)), key=lambda i: (f[i] + i, i))
            self.facing[c] = x
            base += f[x] + x + 1
        layers = [{0: (0, None, None)}]
        done = 0
        for c in kids:
            s = self.size[c]
            nxt: dict[int, tuple] = {}
            for a, (val, _, _) in layers[-1].items():
                for side, na, extra in (("L", a + s, a), ("R", a, done - a)):
                    cand = val + extra
                    if na not in nxt or cand < nxt[na][0]:
                        nxt[na] = (cand, a, side)
            layers.append(nxt)
            done += s
        size = done + 1
        INF = float("inf")
        f = [INF] * size
        for a, (val, _, _) in layers[-1].items():
            f[a] = val + base
        self.size[v] = size
        self.cost[v] = f
        self.choice[v] = layers

    def best_root_offset(self) -> tuple[int, int]:
        f = self.cost[self.root]
        a = min(range(len(f)), key=lambda i: (f[i], i))
        return int(f[a]), a

    def build(self, v, a):
        layers = self.choice[v]
        kids = self.kids[v]
        sides = []
        for i in range(len(kids), 0, -1):
            _, prev, side = layers[i][a]
            sides.append(side)
            a = prev
        sides.reverse()
        left, right = [], []
        for c, side in zip(kids, sides):
            x = self.facing[c]
            if side == "L":
                left.append(self.build(c, self.size[c] - 1 - x))
            else:
                right.append(self.build(c, x))
        seq = []
        for block in reversed(left):
            seq.extend(block)
        seq.append(v)
        for block in right:
            seq.extend(block)
        return seq


def is_noncrossing(arr: LinearArrangement, t: Tree) -> bool:
    return count_crossings(arr, t).C == 0

