"""Edge crossings and dependency lengths in syntactic dependency trees.

Observed crossings C and sum of dependency lengths D of a sentence's tree
are compared with three null predictors: a random arrangement (E0), a
random partner edge given each edge's attested length (E1), and a random
arrangement with the attested D (E[C|D]), with permutation p-values for
the last one.
"""

__version__ = "0.1.0"

from .analysis import SentenceAnalysis, analyze_sentence
from .arrangement import (LinearArrangement, c_max, count_crossings, d_max, d_min,
                          d_min_noncrossing, edge_length, edges_cross, mean_length, sum_lengths)
from .ensembles import (PermutationEnsembleResult, RandomSeed, c_vs_d_curve, conditional_crossings,
                        enumerate_arrangements, enumerate_labeled_trees, enumerate_unlabeled_trees,
                        permutation_ensemble, random_labeled_tree, sample_e0_random_labeled)
from .errors import DepcrossError, NotATree, ParseError
from .predictors import (e0_crossings, e0_crossings_of, e0_length, e1_crossings,
                         expected_e0_random_labeled, p_cross_given_d, star_forced_threshold)
from .statistics import min_significance, normalized_error, p_values
from .tree import Tree, TreeClass, build_tree, classify, degree_profile

__all__ = [
    "LinearArrangement", "PermutationEnsembleResult", "RandomSeed", "SentenceAnalysis", "Tree",
    "TreeClass", "DepcrossError", "NotATree", "ParseError", "analyze_sentence", "build_tree",
    "c_max", "c_vs_d_curve", "classify", "conditional_crossings", "count_crossings", "d_max",
    "d_min", "d_min_noncrossing", "degree_profile", "e0_crossings", "e0_crossings_of",
    "e0_length", "e1_crossings", "edge_length", "edges_cross", "enumerate_arrangements",
    "enumerate_labeled_trees", "enumerate_unlabeled_trees", "expected_e0_random_labeled",
    "mean_length", "min_significance", "normalized_error", "p_cross_given_d", "p_values",
    "permutation_ensemble", "random_labeled_tree", "sample_e0_random_labeled",
    "star_forced_threshold", "sum_lengths",
]
