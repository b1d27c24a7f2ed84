from fractions import Fraction

import pytest

from depcross.errors import DomainTooSmall, NotALeaf, NotATree, OutOfTableRange
from depcross.tree import (Tree, TreeClass, attach_leaf, build_tree, classify, degree_profile,
                           is_quasi_star_degrees, k2_quasi, k2_star, path_tree, quasi_star_tree,
                           reduce_leaf, star_tree, unlabeled_tree_count)


def K2(t):
    return sum(k * k for k in t.degrees)


class TestValidation:
    def test_edges_are_normalised(self):
        t = Tree(3, ((2, 1), (3, 2)))
        assert t.edges == ((1, 2), (2, 3))

    @pytest.mark.parametrize("n, edges, reason", [
        (3, ((1, 2), (1, 2)), "duplicate"),
        (3, ((1, 1), (2, 3)), "self-loop"),
        (4, ((1, 2), (2, 3), (3, 1)), "cycle"),
        (4, ((1, 2), (3, 4)), "wrong edge count"),
        (3, ((1, 2),), "wrong edge count"),
        (3, ((1, 4), (2, 3)), "label"),
    ])
    def test_rejects(self, n, edges, reason):
        with pytest.raises(NotATree) as exc:
            Tree(n, edges)
        assert exc.value.reason == reason

    def test_single_vertex(self):
        t = Tree(1, ())
        assert t.degrees == (0,)
        assert degree_profile(t).K1 == 0

    def test_build_tree(self):
        assert build_tree(3, [[1, 2], [2, 3]]) == path_tree(3)


class TestDegreeProfile:
    def test_dog_which_classes(self, sentences):
        p = degree_profile(sentences["dog_which"].tree)
        assert p.K1 == 16
        assert p.mean_k2 == 4
        assert p.var_k == p.mean_k2 - p.mean_k ** 2

    def test_star(self):
        p = degree_profile(star_tree(6))
        assert p.mean_k2 == 5
        assert p.K2 == k2_star(6)

    def test_float_views(self):
        p = degree_profile(path_tree(4))
        assert p.mean_k2_float == pytest.approx(2.5)


class TestClassify:
    def test_examples(self):
        assert classify(star_tree(9)) is TreeClass.STAR
        assert classify(Tree(6, ((1, 2), (1, 3), (1, 4), (1, 5), (5, 6)))) is TreeClass.QUASI_STAR
        assert classify(path_tree(4)) is TreeClass.LINEAR
        assert classify(Tree(7, ((1, 2), (1, 3), (1, 4), (4, 5), (4, 6), (6, 7)))) is TreeClass.OTHER

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_small_trees_are_stars(self, n):
        assert classify(path_tree(n)) is TreeClass.STAR

    def test_quasi_star_builder(self):
        for n in range(5, 10):
            t = quasi_star_tree(n)
            assert classify(t) is TreeClass.QUASI_STAR
            assert K2(t) == k2_quasi(n)
            assert is_quasi_star_degrees(t.degrees)


class TestReduction:
    def test_star(self):
        smaller, k = reduce_leaf(star_tree(5), 3)
        assert k == 4
        assert classify(smaller) is TreeClass.STAR and smaller.n == 4
        assert K2(star_tree(5)) == 20 and K2(smaller) == 12

    def test_path_endpoint(self):
        smaller, k = reduce_leaf(path_tree(3), 1)
        assert (smaller, k) == (path_tree(2), 2)

    def test_quasi_star_far_leaf(self):
        t = quasi_star_tree(5)          # hub 1 on 2, 3, 4; tail 4-5
        smaller, k = reduce_leaf(t, 5)
        assert k == 2
        assert sorted(smaller.degrees) == [1, 1, 1, 3]

    def test_not_a_leaf(self):
        with pytest.raises(NotALeaf):
            reduce_leaf(star_tree(4), 1)

    def test_attach_then_reduce(self):
        t = quasi_star_tree(6)
        grown = attach_leaf(t, 2)
        assert reduce_leaf(grown, 7) == (t, 2)


class TestTables:
    def test_k2(self):
        assert k2_quasi(3) == 6 == k2_star(3)
        assert k2_star(9) == 72
        assert k2_quasi(9) == 60
        with pytest.raises(DomainTooSmall):
            k2_quasi(2)

    def test_unlabeled_counts(self):
        assert unlabeled_tree_count(9) == 47
        assert unlabeled_tree_count(19) == 317955
        with pytest.raises(OutOfTableRange):
            unlabeled_tree_count(20)
