from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from depcross.analysis import analyze_sentence
from depcross.arrangement import (c_max, count_crossings, d_max, d_min, d_min_noncrossing,
                                  is_noncrossing, sum_lengths)
from depcross.predictors import e0_crossings_of, e1_crossings, general_predictor, p_cross_given_d
from depcross.tree import TreeClass, classify, degree_profile, reduce_leaf
from depcross.treebank_io import format_edge_list, parse_conllu, parse_edge_lists

from conftest import brute_crossings, trees, trees_with_arrangement


@given(trees_with_arrangement(max_n=12))
def test_crossings_match_definition(ta):
    t, arr = ta
    C = count_crossings(arr, t).C
    assert C == brute_crossings(arr, t)
    assert 0 <= C <= c_max(t)


@given(trees_with_arrangement(max_n=12))
def test_reversal_keeps_C_and_D(ta):
    t, arr = ta
    rev = arr.reversed()
    assert count_crossings(rev, t).C == count_crossings(arr, t).C
    assert sum_lengths(rev, t) == sum_lengths(arr, t)


@given(trees(max_n=12))
def test_degree_profile(t):
    p = degree_profile(t)
    n = t.n
    assert p.K1 == 2 * (n - 1)
    assert p.var_k == p.mean_k2 - p.mean_k ** 2
    assert p.mean_k2 <= max(n - 1, 0) or n == 1
    assert (classify(t) is TreeClass.STAR) == (n == 1 or p.mean_k2 == n - 1)


@given(trees(min_n=2, max_n=12), st.data())
def test_leaf_reduction(t, data):
    leaf = data.draw(st.sampled_from(t.leaves()))
    smaller, k = reduce_leaf(t, leaf)
    assert smaller.n == t.n - 1
    assert sum(x * x for x in t.degrees) == sum(x * x for x in smaller.degrees) + 2 * k


@settings(max_examples=60)
@given(trees_with_arrangement(max_n=10))
def test_extremes_bracket_D(ta):
    t, arr = ta
    D = sum_lengths(arr, t)
    lo, w = d_min(t)
    nc, wnc = d_min_noncrossing(t)
    assert lo <= D <= d_max(t)[0]
    assert lo <= nc
    assert is_noncrossing(wnc, t) and sum_lengths(wnc, t) == nc
    if is_noncrossing(arr, t):
        assert nc <= D


@given(trees_with_arrangement(min_n=4, max_n=14))
def test_e1_forms_agree(ta):
    t, arr = ta
    r = e1_crossings(t, arr)
    assert r.E1_C == general_predictor(t, arr, 1)
    assert r.B1 == 6 * (t.n - 1) * e0_crossings_of(t)


@given(st.integers(4, 60), st.data())
def test_p_cross_symmetric(n, data):
    d = data.draw(st.integers(1, n - 1))
    p = p_cross_given_d(n, d)
    assert p == p_cross_given_d(n, n - d)
    assert 0 <= p <= 1  # n = 4, d = 2 always crosses


@settings(max_examples=25, deadline=None)
@given(trees_with_arrangement(max_n=7))
def test_analysis_invariants(ta):
    t, arr = ta
    a = analyze_sentence(t, arr)
    assert 0 <= a.C <= a.C_max
    assert a.D_min <= a.D <= a.D_max
    for p in (a.pL_C, a.pR_C, a.pL_dev, a.pR_dev):
        assert Fraction(1, a.R) <= p <= 1
    assert a.pL_C + a.pR_C >= 1
    assert a.eps0 >= 0 and a.eps1 >= 0 and a.eps_cond >= 0


@given(trees_with_arrangement(max_n=15))
def test_edge_list_round_trip(ta):
    t, arr = ta
    (e,) = parse_edge_lists(format_edge_list(t, arr, "s"))
    assert e.tree == t and e.arrangement == arr


@given(trees(max_n=15), st.data())
def test_conllu_round_trip(t, data):
    root = data.draw(st.integers(1, t.n))
    heads = [0] * t.n
    stack, seen = [root], {root}
    while stack:
        v = stack.pop()
        for w in t.adjacency[v]:
            if w not in seen:
                seen.add(w)
                heads[w - 1] = v
                stack.append(w)
    text = "".join(f"{i}\tw{i}\t_\t_\t_\t_\t{h}\tdep\t_\t_\n" for i, h in enumerate(heads, 1)) + "\n"
    (rec,) = parse_conllu(text)
    tree, arr = rec.to_tree()
    assert tree == t and arr.order == tuple(range(1, t.n + 1))


@given(trees_with_arrangement(max_n=12))
def test_per_edge_crossings_bounded_by_degrees(ta):
    t, arr = ta
    per_edge = count_crossings(arr, t).per_edge
    for (u, v), c in per_edge.items():
        assert c <= t.n - t.degree(u) - t.degree(v)


@given(trees_with_arrangement(max_n=12), st.data())
def test_relabeling_invariance(ta, data):
    t, arr = ta
    perm = data.draw(st.permutations(range(1, t.n + 1)))
    mapping = {v: perm[v - 1] for v in range(1, t.n + 1)}
    t2 = t.relabel(mapping)
    pi2 = [0] * t.n
    for v in range(1, t.n + 1):
        pi2[mapping[v] - 1] = arr.pi[v - 1]
    from depcross.arrangement import LinearArrangement
    arr2 = LinearArrangement(tuple(pi2))
    assert count_crossings(arr2, t2).C == count_crossings(arr, t).C
    assert sum_lengths(arr2, t2) == sum_lengths(arr, t)
