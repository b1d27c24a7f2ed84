"""Undirected labeled trees, their degree profiles and topology classes.

Vertices are the dense labels ``1..n``.  In a dependency tree they are the
words of the sentence, so a label doubles as the word's position in the
attested order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainTooSmall, NotALeaf, NotATree, OutOfTableRange

Edge = tuple[int, int]

# number of unlabeled trees with n vertices (OEIS A000055), n = 1..19
_UNLABELED_TREES = (
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867, 317955,
)


@dataclass(frozen=True)
class Tree:
    """A validated tree on vertices ``1..n``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v`` in sorted
    order, so two trees with the same edge set compare equal.
    """

    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise NotATree("wrong edge count", f"n must be a positive integer, got {n!r}")
        norm = []
        seen = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (1 <= u <= n and 1 <= v <= n):
                raise NotATree("label", f"edge {e} outside 1..{n}")
            if u == v:
                raise NotATree("self-loop", f"vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise NotATree("duplicate", f"edge {key}")
            seen.add(key)
            norm.append(key)
        # union-find: a cycle shows up as an edge inside one component
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in norm:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise NotATree("cycle", f"edge {(u, v)} closes a cycle")
            parent[ru] = rv
        if len(norm) != n - 1:
            # acyclic with fewer than n - 1 edges, hence also disconnected
            raise NotATree("wrong edge count", f"{len(norm)} edges for {n} vertices")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbour tuples indexed by label; index 0 is unused."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Degree of vertex ``i`` at index ``i - 1``."""
        return tuple(len(self.adjacency[v]) for v in range(1, self.n + 1))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def leaves(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if self.degree(v) == 1]

    def relabel(self, mapping: Sequence[int] | dict[int, int]) -> Tree:
        """Tree with vertex ``v`` renamed ``mapping[v]``."""
        return Tree(self.n, tuple((mapping[u], mapping[v]) for u, v in self.edges))

    def __repr__(self):
        return f"Tree(n={self.n}, edges={list(self.edges)})"


def build_tree(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    """Validate ``edges`` as a tree on ``1..n``; raises :class:`NotATree`."""
    return Tree(n, tuple(tuple(e) for e in edges))


def star_tree(n: int, hub: int = 1) -> Tree:
    return Tree(n, tuple((hub, v) for v in range(1, n + 1) if v != hub))


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((v, v + 1) for v in range(1, n)))


def quasi_star_tree(n: int) -> Tree:
    """Hub 1 joined to 2..n-1, plus the pendant edge (n-1, n)."""
    if n < 3:
        raise DomainTooSmall(f"a quasi-star tree needs n >= 3, got {n}")
    return Tree(n, tuple((1, v) for v in range(2, n)) + ((n - 1, n),))


@dataclass(frozen=True)
class DegreeProfile:
    """Degree sequence with its sums and moments.

    Moments are exact :class:`~fractions.Fraction` values; the ``*_float``
    properties are conveniences for display.
    """

    n: int
    degrees: tuple[int, ...]
    K1: int
    K2: int
    mean_k: Fraction
    mean_k2: Fraction
    var_k: Fraction

    @property
    def mean_k_float(self) -> float:
        return float(self.mean_k)

    @property
    def mean_k2_float(self) -> float:
        return float(self.mean_k2)

    @property
    def var_k_float(self) -> float:
        return float(self.var_k)


def degree_profile(t: Tree) -> DegreeProfile:
    degs = t.degrees
    n = t.n
    K1 = sum(degs)
    K2 = sum(k * k for k in degs)
    mean_k = Fraction(K1, n)
    mean_k2 = Fraction(K2, n)
    return DegreeProfile(n, degs, K1, K2, mean_k, mean_k2, mean_k2 - mean_k * mean_k)


class TreeClass(enum.Enum):
    STAR = "star"
    QUASI_STAR = "quasi-star"
    LINEAR = "linear"
    OTHER = "other"


def classify(t: Tree) -> TreeClass:
    """Topology class of ``t``.

    Overlaps are resolved as Star, then Linear, then QuasiStar: the n <= 3
    trees are stars, and the 4-vertex path (whose degrees {2, 2, 1, 1} also
    fit the quasi-star pattern) is linear.
    """
    n = t.n
    degs = t.degrees
    if n == 1 or max(degs) == n - 1:
        return TreeClass.STAR
    if max(degs) <= 2:
        return TreeClass.LINEAR
    if n >= 4 and is_quasi_star_degrees(degs):
        return TreeClass.QUASI_STAR
    return TreeClass.OTHER


def is_quasi_star_degrees(degrees: Sequence[int]) -> bool:
    """One vertex of degree n - 2, one of degree 2, the rest leaves."""
    n = len(degrees)
    if n < 3:
        return False
    return sorted(degrees) == sorted([n - 2, 2] + [1] * (n - 2))


def reduce_leaf(t: Tree, leaf: int) -> tuple[Tree, int]:
    """Remove ``leaf`` and compact the labels above it.

    Returns the reduced tree and the degree ``k`` (in ``t``) of the vertex
    the leaf hung from, so that ``K2(t) == K2(reduced) + 2 * k``.
    """
    if t.n < 2:
        raise NotALeaf(f"a tree with {t.n} vertex has no leaves")
    if not 1 <= leaf <= t.n or t.degree(leaf) != 1:
        raise NotALeaf(f"vertex {leaf} is not a leaf")
    (attach,) = t.adjacency[leaf]
    k = t.degree(attach)

    def shift(v):
        return v - 1 if v > leaf else v

    edges = tuple((shift(u), shift(v)) for u, v in t.edges if leaf not in (u, v))
    return Tree(t.n - 1, edges), k


def attach_leaf(t: Tree, v: int) -> Tree:
    """Tree with a new vertex ``n + 1`` hanging from ``v``."""
    return Tree(t.n + 1, t.edges + ((v, t.n + 1),))


def k2_quasi(n: int) -> int:
    """Sum of squared degrees of a quasi-star tree, n^2 - 3n + 6."""
    if n < 3:
        raise DomainTooSmall(f"a quasi-star tree needs n >= 3, got {n}")
    return n * n - 3 * n + 6


def k2_star(n: int) -> int:
    """Sum of squared degrees of a star tree, n(n - 1)."""
    if n < 2:
        raise DomainTooSmall(f"a star tree needs n >= 2, got {n}")
    return n * (n - 1)


def unlabeled_tree_count(n: int) -> int:
    """Number of unlabeled trees on ``n`` vertices, tabulated for 1 <= n <= 19."""
    if not 1 <= n <= len(_UNLABELED_TREES):
        raise OutOfTableRange(f"t(n) is tabulated for 1 <= n <= {len(_UNLABELED_TREES)}, got {n}")
    return _UNLABELED_TREES[n - 1]
