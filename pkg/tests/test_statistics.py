from fractions import Fraction

import pytest

from depcross.arrangement import LinearArrangement
from depcross.errors import DegenerateCmax
from depcross.statistics import (min_significance, normalized_error, p_values,
                                 p_values_from_distribution)
from depcross.tree import path_tree, star_tree

TABLE = {
    # sentence: (pL_C, pR_C, pL_dev, pR_dev) as printed
    "dog_which": ("0.28", "1", "0.94", "0.33"),
    "dog_yesterday_which": ("0.37", "0.88", "0.54", "0.71"),
    "woman_in_situ": ("0.058", "1", "0.97", "0.088"),
    "woman_extraposed": ("0.69", "0.75", "0.43", "1"),
}


def decimals(cell):
    return len(cell.split(".")[1]) if "." in cell else 0


class TestNormalizedError:
    def test_values(self):
        assert normalized_error(0, 6, 18) == Fraction(1, 3)
        assert normalized_error(1, 3, 9) == Fraction(2, 9)

    def test_degenerate(self):
        assert normalized_error(0, 0, 0) == 0
        with pytest.raises(DegenerateCmax):
            normalized_error(1, 0, 0)


class TestPValues:
    def test_ties_count_on_both_sides(self):
        rep = p_values_from_distribution({0: 2, 1: 5, 2: 3}, 1)
        assert (rep.left_p, rep.right_p) == (Fraction(7, 10), Fraction(8, 10))
        assert rep.min_attainable_p == Fraction(1, 10)

    def test_abs_dev(self):
        # mean 1.1: deviations 1.1, 0.1, 0.9
        rep = p_values_from_distribution({0: 2, 1: 5, 2: 3}, 2, "abs_dev")
        assert rep.observed == Fraction(9, 10)
        assert (rep.left_p, rep.right_p) == (Fraction(8, 10), Fraction(5, 10))

    def test_rejects_unknown_statistic(self):
        with pytest.raises(ValueError):
            p_values_from_distribution({0: 1}, 0, "D")

    @pytest.mark.parametrize("sid", TABLE)
    def test_table(self, sentences, sid):
        e = sentences[sid]
        c = p_values(e.tree, e.arrangement, "C")
        d = p_values(e.tree, e.arrangement, "abs_dev")
        got = (c.left_p, c.right_p, d.left_p, d.right_p)
        for value, cell in zip(got, TABLE[sid]):
            assert round(float(value), decimals(cell)) == float(cell)

    def test_alpha_decision(self):
        rep = p_values_from_distribution({0: 1, 3: 99}, 0, alpha="0.05")
        assert rep.left_p == Fraction(1, 100) and rep.reject_left and not rep.reject_right

    def test_attested_is_in_its_own_class(self):
        t = path_tree(6)
        arr = LinearArrangement.from_order([2, 4, 1, 6, 3, 5])
        rep = p_values(t, arr)
        assert rep.left_p >= rep.min_attainable_p and rep.right_p >= rep.min_attainable_p
        assert rep.left_p + rep.right_p >= 1

    def test_star_is_trivial(self):
        rep = p_values(star_tree(6), LinearArrangement.identity(6))
        assert rep.left_p == rep.right_p == 1


class TestMinSignificance:
    def test_table_R(self):
        v = min_significance([288, 6664, 548, 102], Fraction(1, 20))
        assert v.R_min == 102 and v.min_p == Fraction(1, 102) and v.admissible

    def test_inadmissible(self):
        assert not min_significance([10], "0.05").admissible
        assert not min_significance([20], "0.05").admissible   # p = 1/20 cannot be < 1/20

    def test_bad_input(self):
        with pytest.raises(ValueError):
            min_significance([])
