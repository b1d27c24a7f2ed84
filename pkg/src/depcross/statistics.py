"""Normalized prediction errors and permutation p-values.

The null set for the p-values is every arrangement of the tree with the
same sum of dependency lengths D as the attested one.  Ties count in both
tails, so the attested arrangement always contributes to the numerator and
the smallest attainable p-value is 1/R.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arrangement import LinearArrangement, count_crossings, sum_lengths
from .ensembles import PermutationEnsembleResult, permutation_ensemble
from .errors import DegenerateCmax
from .tree import Tree

DEFAULT_ALPHA = Fraction(1, 20)
STATISTICS = ("C", "abs_dev")


def _fraction(x) -> Fraction:
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def normalized_error(C_obs, C_pred, C_max) -> Fraction:
    """|C_obs - C_pred| / C_max.

    With C_max = 0 the error is 0 if both counts are 0; anything else is
    inconsistent and raises :class:`DegenerateCmax`.
    """
    C_obs, C_pred = Fraction(C_obs), Fraction(C_pred)
    if C_max == 0:
        if C_obs == 0 and C_pred == 0:
            return Fraction(0)
        raise DegenerateCmax(f"C_max = 0 but C = {C_obs}, prediction = {C_pred}")
    return abs(C_obs - C_pred) / Fraction(C_max)


@dataclass(frozen=True)
class PValueReport:
    statistic: str
    observed: Fraction
    left_p: Fraction
    right_p: Fraction
    R: int
    min_attainable_p: Fraction
    alpha_used: Fraction
    method: str = "exhaustive"

    @property
    def reject_left(self) -> bool:
        return self.left_p < self.alpha_used

    @property
    def reject_right(self) -> bool:
        return self.right_p < self.alpha_used


def p_values_from_distribution(dist: Mapping[int, int], C_obs: int, statistic: str = "C",
                               alpha=DEFAULT_ALPHA, method: str = "exhaustive") -> PValueReport:
    """Left/right p-values of ``statistic`` from a crossing distribution ``{C: count}``."""
    if statistic not in STATISTICS:
        raise ValueError(f"statistic must be one of {STATISTICS}, got {statistic!r}")
    R = sum(dist.values())
    if R == 0:
        raise ValueError("empty distribution")
    if statistic == "C":
        def stat(c):
            return Fraction(c)
    else:
        mean = Fraction(sum(c * k for c, k in dist.items()), R)

        def stat(c):
            return abs(c - mean)
    obs = stat(C_obs)
    left = sum(k for c, k in dist.items() if stat(c) <= obs)
    right = sum(k for c, k in dist.items() if stat(c) >= obs)
    return PValueReport(statistic, obs, Fraction(left, R), Fraction(right, R), R, Fraction(1, R),
                        _fraction(alpha), method)


def p_values(t: Tree, arr: LinearArrangement, statistic: str = "C", *, C_obs: int | None = None,
             ensemble: PermutationEnsembleResult | None = None, alpha=DEFAULT_ALPHA,
             **ensemble_kwargs) -> PValueReport:
    """p-values of the attested arrangement against those sharing its D."""
    ens = ensemble if ensemble is not None else permutation_ensemble(t, **ensemble_kwargs)
    D = sum_lengths(arr, t)
    if C_obs is None:
        C_obs = count_crossings(arr, t).C
    return p_values_from_distribution(ens.distribution(D), C_obs, statistic, alpha, ens.method)


@dataclass(frozen=True)
class SignificanceVerdict:
    R_min: int
    min_p: Fraction
    alpha: Fraction
    admissible: bool


def min_significance(R_values: Sequence[int], alpha=DEFAULT_ALPHA) -> SignificanceVerdict:
    """Whether ``alpha`` can be beaten at all: it must exceed 1/R_min."""
    if not R_values or min(R_values) < 1:
        raise ValueError("need at least one R and every R >= 1")
    alpha = _fraction(alpha)
    R_min = min(R_values)
    min_p = Fraction(1, R_min)
    return SignificanceVerdict(R_min, min_p, alpha, alpha > min_p)
