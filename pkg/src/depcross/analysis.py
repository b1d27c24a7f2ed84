"""One-sentence summary: observed crossings and lengths against the three predictors."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .arrangement import (MAX_EXACT_N, LinearArrangement, c_max, count_crossings, d_max, d_min,
                          sum_lengths)
from .ensembles import (DEFAULT_SEED, MAX_EXHAUSTIVE_N, InsufficientSamples, RandomSeed,
                        permutation_ensemble)
from .predictors import e0_crossings_of, e1_crossings
from .statistics import DEFAULT_ALPHA, normalized_error, p_values_from_distribution
from .tree import Tree

NAN = float("nan")


@dataclass(frozen=True)
class SentenceAnalysis:
    """One column of the predictor table for a single sentence.

    Exact quantities are Fractions.  Monte Carlo estimates of E[C|D] and
    its p-values are Fractions of sample counts, or NaN when no sample hit
    the attested D; ``R`` is then the estimated number of permutations.
    """

    sentence_id: str
    n: int
    mean_k2: Fraction
    C: int
    D: int
    C_max: int
    D_min: int | None
    D_max: int | None
    E0_C: Fraction
    eps0: Fraction
    E1_C: Fraction
    eps1: Fraction
    E_C_given_D: Fraction | float
    eps_cond: Fraction | float
    pL_C: Fraction | float
    pR_C: Fraction | float
    pL_dev: Fraction | float
    pR_dev: Fraction | float
    R: int | float
    method: str
    seed: int | None
    E_C_given_D_se: float
    alpha: Fraction = DEFAULT_ALPHA

    def as_row(self) -> dict:
        row = asdict(self)
        row.pop("alpha")
        return row

    def as_json(self) -> dict:
        """Floats at full precision plus exact rationals as ``"p/q"`` strings."""
        out, exact = {}, {}
        for key, val in self.as_row().items():
            if isinstance(val, Fraction):
                out[key] = val.numerator if val.denominator == 1 else float(val)
                if val.denominator != 1:
                    exact[key] = f"{val.numerator}/{val.denominator}"
            elif isinstance(val, float) and math.isnan(val):
                out[key] = None
            else:
                out[key] = val
        out["exact"] = exact
        return out

    @property
    def reject_left(self) -> bool:
        return _below(self.pL_C, self.alpha)

    @property
    def reject_right(self) -> bool:
        return _below(self.pR_C, self.alpha)


def _below(p, alpha) -> bool:
    return not (isinstance(p, float) and math.isnan(p)) and p < alpha


def _nan_error(C, pred, cmax):
    if isinstance(pred, float):
        return NAN
    return normalized_error(C, pred, cmax)


def analyze_sentence(
    t: Tree,
    arr: LinearArrangement | None = None,
    sentence_id: str = "1",
    *,
    max_exhaustive_n: int = MAX_EXHAUSTIVE_N,
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
    stream: int = 0,
    alpha=DEFAULT_ALPHA,
    max_exact_n: int = MAX_EXACT_N,
    workers: int = 1,
    backend: str | None = None,
) -> SentenceAnalysis:
    """All observed values, predictions, errors and p-values for one sentence.

    The permutation ensemble is exhaustive up to ``max_exhaustive_n``
    vertices and sampled beyond; ``stream`` separates the random streams of
    different sentences under one seed.  D_min and D_max are left empty
    above ``max_exact_n``.
    """
    arr = arr if arr is not None else LinearArrangement.identity(t.n)
    n = t.n
    C = count_crossings(arr, t).C
    D = sum_lengths(arr, t)
    cmax = c_max(t)
    K2 = sum(k * k for k in t.degrees)
    if n <= max_exact_n:
        lo, hi = d_min(t, max_exact_n)[0], d_max(t, max_exact_n)[0]
    else:
        lo = hi = None
    E0 = e0_crossings_of(t)
    E1 = e1_crossings(t, arr).E1_C

    ens = permutation_ensemble(t, max_exhaustive_n=max_exhaustive_n, samples=samples,
                               seed=RandomSeed(int(seed), stream), workers=workers, backend=backend)
    try:
        dist = ens.distribution(D)
    except InsufficientSamples:
        dist = None
    if dist is None:
        ECD = pL = pR = dL = dR = NAN
        se = NAN
    else:
        ECD = ens.mean_C(D)
        se = ens.se_C(D)
        pc = p_values_from_distribution(dist, C, "C", alpha, ens.method)
        pd = p_values_from_distribution(dist, C, "abs_dev", alpha, ens.method)
        pL, pR, dL, dR = pc.left_p, pc.right_p, pd.left_p, pd.right_p
    R = ens.R(D) if ens.exhaustive else ens.estimated_R(D)

    return SentenceAnalysis(
        sentence_id=str(sentence_id),
        n=n,
        mean_k2=Fraction(K2, n),
        C=C,
        D=D,
        C_max=cmax,
        D_min=lo,
        D_max=hi,
        E0_C=E0,
        eps0=normalized_error(C, E0, cmax),
        E1_C=E1,
        eps1=normalized_error(C, E1, cmax),
        E_C_given_D=ECD,
        eps_cond=_nan_error(C, ECD, cmax),
        pL_C=pL,
        pR_C=pR,
        pL_dev=dL,
        pR_dev=dR,
        R=R,
        method=ens.method,
        seed=None if ens.exhaustive else int(seed),
        E_C_given_D_se=se,
        alpha=Fraction(alpha) if not isinstance(alpha, float) else Fraction(str(alpha)),
    )


def display_value(x) -> str:
    """Two significant digits for fractional values, integers as they are."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if abs(x) >= 10:
        return str(round(x))
    return f"{x:.2g}"
