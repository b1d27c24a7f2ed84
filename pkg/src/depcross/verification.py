"""Exhaustive self-checks of the degree and crossing-probability identities.

Each check returns a :class:`CheckResult`; a failure is a finding, not an
exception.  The K2 checks take their K2 values through a callable so a
forged value can be injected to prove the checker is able to fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .ensembles import enumerate_labeled_trees, enumerate_unlabeled_trees
from .predictors import (e0_crossings_of, p_cross_given_d, p_cross_max, p_length)
from .tree import Tree, TreeClass, classify, k2_quasi, k2_star, reduce_leaf, unlabeled_tree_count


def k2_of(t: Tree) -> int:
    return sum(k * k for k in t.degrees)


@dataclass
class CheckResult:
    name: str
    scope: str
    cases: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, item):
        # keep the first few for the report
        if len(self.counterexamples) < 5:
            self.counterexamples.append(item)
        else:
            self.counterexamples.append(None)


def trees_up_to(n_min: int, n_max: int, labeled: bool = False) -> Iterable[Tree]:
    for n in range(n_min, n_max + 1):
        yield from (enumerate_labeled_trees(n) if labeled else enumerate_unlabeled_trees(n))


def check_tree_counts(n_max: int) -> CheckResult:
    res = CheckResult("unlabeled tree counts", f"n=1..{n_max}")
    for n in range(1, n_max + 1):
        res.cases += 1
        got = len(enumerate_unlabeled_trees(n))
        if got != unlabeled_tree_count(n):
            res.fail((n, got))
    return res


def check_k2_reduction(trees: Iterable[Tree], k2: Callable[[Tree], int] = k2_of,
                       scope: str = "") -> CheckResult:
    """K2(t) = K2(t minus a leaf) + 2k for every leaf, k the degree of its neighbour."""
    res = CheckResult("K2 leaf-reduction identity", scope)
    for t in trees:
        if t.n < 2:
            continue
        for leaf in t.leaves():
            res.cases += 1
            smaller, k = reduce_leaf(t, leaf)
            if k2(t) != k2(smaller) + 2 * k:
                res.fail((t, leaf))
    return res


def check_star_extremality(trees: Iterable[Tree], k2: Callable[[Tree], int] = k2_of,
                           scope: str = "") -> CheckResult:
    """Every tree with K2 above the quasi-star value is a star."""
    res = CheckResult("K2 > quasi-star value implies star", scope)
    for t in trees:
        if t.n < 3:
            continue
        res.cases += 1
        if k2(t) > k2_quasi(t.n) and classify(t) is not TreeClass.STAR:
            res.fail(t)
    return res


def check_quasi_below_star(n_max: int) -> CheckResult:
    """K2 of a quasi-star never exceeds that of a star, with equality only at n = 3."""
    res = CheckResult("quasi-star K2 <= star K2", f"n=3..{n_max}")
    for n in range(3, n_max + 1):
        res.cases += 1
        q, s = k2_quasi(n), k2_star(n)
        if q > s or (q == s) != (n == 3):
            res.fail(n)
    return res


def check_b1_identity(trees: Iterable[Tree], scope: str = "") -> CheckResult:
    """B1 = (n - 1)(n(n - 1) - K2) equals 6(n - 1)E0[C]."""
    res = CheckResult("B1 = 6(n-1)E0[C]", scope)
    for t in trees:
        res.cases += 1
        n = t.n
        B1 = (n - 1) * (n * (n - 1) - k2_of(t))
        if B1 != 6 * (n - 1) * e0_crossings_of(t):
            res.fail(t)
    return res


def check_mean_crossing_probability(n_max: int) -> CheckResult:
    """Sum over d of p(cross|d) p(d) is exactly 1/3."""
    res = CheckResult("sum_d p(cross|d) p(d) = 1/3", f"n=4..{n_max}")
    for n in range(4, n_max + 1):
        res.cases += 1
        total = sum(p_cross_given_d(n, d) * p_length(n, d) for d in range(1, n))
        if total != Fraction(1, 3):
            res.fail((n, total))
    return res


def check_crossing_probability_shape(n_max: int) -> CheckResult:
    """Symmetric in d <-> n - d, zero at both ends, maximal at the middle."""
    res = CheckResult("p(cross|d) symmetry, zeros, maximum", f"n=4..{n_max}")
    for n in range(4, n_max + 1):
        res.cases += 1
        p = {d: p_cross_given_d(n, d) for d in range(1, n)}
        top = max(p.values())
        argmax = {d for d, v in p.items() if v == top}
        # the bound is reached at d = n/2 for even n, strictly above the odd-n peak
        bound_ok = top == p_cross_max(n) if n % 2 == 0 else top < p_cross_max(n)
        ok = (
            all(p[d] == p[n - d] for d in p)
            and p[1] == 0
            and p[n - 1] == 0
            and argmax == {n // 2, (n + 1) // 2}
            and bound_ok
        )
        if not ok:
            res.fail(n)
    return res


def forged_k2(t: Tree) -> int:
    """K2 inflated for one non-star tree; used only by the self-test."""
    k = k2_of(t)
    if t.n == 5 and max(t.degrees) == 2:
        return k2_quasi(5) + 1
    return k


def check_self_test(n_max: int = 6) -> CheckResult:
    """The extremality and reduction checks must both flag a forged K2."""
    res = CheckResult("self-test: forged K2 is caught", f"n=3..{n_max}")
    trees = list(trees_up_to(3, n_max))
    for check in (check_star_extremality, check_k2_reduction):
        res.cases += 1
        if check(trees, forged_k2).passed:
            res.fail(check.__name__)
    return res


def run_all(n_max: int = 8, p_n_max: int = 50, labeled: bool = False) -> list[CheckResult]:
    kind = "labeled" if labeled else "unlabeled"
    scope = f"{kind} trees, n=3..{n_max}"
    trees = list(trees_up_to(3, n_max, labeled))
    return [
        check_tree_counts(n_max),
        check_k2_reduction(trees, scope=scope),
        check_star_extremality(trees, scope=scope),
        check_quasi_below_star(n_max),
        check_b1_identity(trees, scope=scope),
        check_mean_crossing_probability(p_n_max),
        check_crossing_probability_shape(p_n_max),
        check_self_test(),
    ]


def format_table(results: list[CheckResult]) -> str:
    rows = [("check", "scope", "cases", "counterexamples", "result")]
    for r in results:
        rows.append((r.name, r.scope, str(r.cases), str(len(r.counterexamples)),
                     "PASS" if r.passed else "FAIL"))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
