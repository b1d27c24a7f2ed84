"""Closed-form predictors of crossings and dependency lengths.

Every value is an exact :class:`~fractions.Fraction`; convert with
``float()`` for display.  Crossing predictors return 0 for trees with
fewer than four vertices, which cannot have crossings.  The low-level
probability ``p_cross_given_d`` is only defined from n = 4 and raises
below that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .arrangement import LinearArrangement
from .errors import DomainTooSmall, TooFewVertices
from .tree import Tree


def _exact(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    # floats are taken at their printed value (3.4 -> 17/5), not their binary one
    return Fraction(str(x))


def e0_crossings(n: int, mean_k2) -> Fraction:
    """Expected crossings in a uniformly random arrangement: (n/6)(n - 1 - <k^2>)."""
    if n < 1:
        raise DomainTooSmall(f"n must be >= 1, got {n}")
    return Fraction(n, 6) * (n - 1 - _exact(mean_k2))


def e0_crossings_of(t: Tree) -> Fraction:
    return e0_crossings(t.n, Fraction(sum(k * k for k in t.degrees), t.n))


def e0_crossings_linear(n: int) -> Fraction:
    """E0[C] of a linear tree, n(n - 5)/6 + 1, the maximum for a given n."""
    if n < 2:
        raise DomainTooSmall(f"linear-tree formula needs n >= 2, got {n}")
    return Fraction(n * (n - 5), 6) + 1


def e0_crossings_quasi(n: int) -> Fraction:
    """E0[C] of a quasi-star tree, n/3 - 1."""
    if n < 3:
        raise DomainTooSmall(f"a quasi-star tree needs n >= 3, got {n}")
    return Fraction(n, 3) - 1


def expected_e0_random_labeled(n: int) -> Fraction:
    """Mean of E0[C] over uniformly random labeled trees, (n - 1)(n - 5 + 6/n)/6."""
    if n < 1:
        raise DomainTooSmall(f"n must be >= 1, got {n}")
    return Fraction(n - 1, 6) * (n - 5 + Fraction(6, n))


def degree_variance_random_labeled(n: int) -> Fraction:
    """Expected degree variance of a uniformly random labeled tree, (1 - 1/n)(1 - 2/n)."""
    if n < 1:
        raise DomainTooSmall(f"n must be >= 1, got {n}")
    return (1 - Fraction(1, n)) * (1 - Fraction(2, n))


def mean_k2_random_labeled(n: int) -> Fraction:
    """Expected <k^2> of a uniformly random labeled tree, (1 - 1/n)(5 - 6/n)."""
    if n < 1:
        raise DomainTooSmall(f"n must be >= 1, got {n}")
    return (1 - Fraction(1, n)) * (5 - Fraction(6, n))


def min_k2_for_crossing_budget(n: int, a) -> Fraction:
    """Smallest <k^2> compatible with E0[C] <= a: n - 1 - 6a/n."""
    a = _exact(a)
    if a < 0 or n < 1:
        raise DomainTooSmall(f"need a >= 0 and n >= 1, got a={a}, n={n}")
    return n - 1 - 6 * a / n


def star_forced_threshold(a) -> Fraction:
    """3a + 3: for n strictly above it only star trees keep E0[C] <= a."""
    a = _exact(a)
    if a < 0:
        raise DomainTooSmall(f"crossing budget must be >= 0, got {a}")
    return 3 * a + 3


def e0_length(n: int) -> Fraction:
    """Expected sum of dependency lengths in a random arrangement, (n - 1)(n + 1)/3."""
    if n < 1:
        raise DomainTooSmall(f"n must be >= 1, got {n}")
    return Fraction((n - 1) * (n + 1), 3)


def p_cross_given_d(n: int, d: int) -> Fraction:
    """Probability that a vertex-disjoint random edge crosses an edge of length d."""
    if n < 4:
        raise TooFewVertices(f"crossings need n >= 4, got {n}")
    if not 1 <= d <= n - 1:
        raise ValueError(f"length must lie in 1..{n - 1}, got {d}")
    return Fraction(2 * (d - 1) * (n - d - 1), (n - 2) * (n - 3))


def p_length(n: int, d: int) -> Fraction:
    """Probability that a random placement of an edge's endpoints gives length d."""
    if n < 2:
        raise TooFewVertices(f"an edge needs n >= 2, got {n}")
    if not 1 <= d <= n - 1:
        raise ValueError(f"length must lie in 1..{n - 1}, got {d}")
    return Fraction(2 * (n - d), n * (n - 1))


def p_cross_max(n: int) -> Fraction:
    """Upper bound of p(cross|d), attained at d = n/2 when n is even."""
    if n < 4:
        raise TooFewVertices(f"crossings need n >= 4, got {n}")
    return (Fraction(n * n, 2) - 2 * (n - 1)) / ((n - 2) * (n - 3))


@dataclass(frozen=True)
class E1Result:
    E1_C: Fraction
    B1: int
    B2: int


def e1_crossings(t: Tree, arr: LinearArrangement) -> E1Result:
    """Crossings predicted from the attested length of one edge per pair.

    Computed through the decomposition (B2 - B1)/((n - 2)(n - 3)); B1 only
    depends on n and the degrees.
    """
    n = t.n
    deg = t.degrees
    K2 = sum(k * k for k in deg)
    B1 = (n - 1) * (n * (n - 1) - K2)
    B2 = 0
    for u, v in t.edges:
        d = abs(arr.pi[u - 1] - arr.pi[v - 1])
        B2 += (n - deg[u - 1] - deg[v - 1]) * (n - d) * d
    if n < 4:
        return E1Result(Fraction(0), B1, B2)
    return E1Result(Fraction(B2 - B1, (n - 2) * (n - 3)), B1, B2)


def general_predictor(t: Tree, arr: LinearArrangement | None, mode: int) -> Fraction:
    """Sum over edges of (n - k_u - k_v) times the crossing probability of the edge.

    ``mode=0`` uses the unconditional 1/3; ``mode=1`` conditions on the
    edge's length in ``arr``.
    """
    n = t.n
    if n < 4:
        return Fraction(0)
    deg = t.degrees
    total = Fraction(0)
    for u, v in t.edges:
        w = n - deg[u - 1] - deg[v - 1]
        if mode == 0:
            p = Fraction(1, 3)
        elif mode == 1:
            if arr is None:
                raise ValueError("mode 1 needs an arrangement")
            p = p_cross_given_d(n, abs(arr.pi[u - 1] - arr.pi[v - 1]))
        else:
            raise ValueError(f"mode must be 0 or 1, got {mode}")
        total += w * p
    # ordered-pair double sum is twice the edge sum; with the 1/4 factor, 1/2
    return total / 2


@dataclass(frozen=True)
class PredictorReport:
    n: int
    e0_C: Fraction
    e0_D: Fraction
    e1_C: Fraction
    B1: int
    B2: int
    p_cross_table: dict[int, Fraction]
    p_length_table: dict[int, Fraction]
    p_cross_max: Fraction | None


def predictor_report(t: Tree, arr: LinearArrangement) -> PredictorReport:
    n = t.n
    e1 = e1_crossings(t, arr)
    if n >= 4:
        pc = {d: p_cross_given_d(n, d) for d in range(1, n)}
        pmax = p_cross_max(n)
    else:
        pc = {d: Fraction(0) for d in range(1, n)}
        pmax = None
    pl = {d: p_length(n, d) for d in range(1, n)} if n >= 2 else {}
    return PredictorReport(n, e0_crossings_of(t), e0_length(n), e1.E1_C, e1.B1, e1.B2, pc, pl, pmax)
