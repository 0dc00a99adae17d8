from fractions import Fraction

import pytest

from deptree.arrangement import LinearArrangement, crossing_count, length_stats
from deptree.bounds import cpairs_from_degrees, dmin_lower_star_ensemble, star_dmin_exact
from deptree.oracles import (
    SizeLimitError,
    arrange_linear,
    arrange_star,
    brute_max_crossings,
    brute_max_noncrossing_D,
    brute_min_mean_length,
    decomposition_max_D,
    delta,
    half_permutations,
)
from deptree.tree import degree_stats, enumerate_trees, make_linear_tree, make_star_tree


def check_witness(tree, result, stat):
    """The witness must reproduce the reported optimum through the metric code."""
    assert stat(tree, result.witness) == result.value


def mean_d(tree, arr):
    return length_stats(tree, arr).mean_d


def total_d(tree, arr):
    return length_stats(tree, arr).D


def crossings(tree, arr):
    return crossing_count(tree, arr).C


class TestConstructions:
    def test_star_hub_end_nine(self):
        arr = arrange_star(9, "hub_end")
        assert mean_d(make_star_tree(9), arr) == Fraction(9, 2)

    def test_star_hub_center_nine(self):
        arr = arrange_star(9, "hub_center")
        assert arr(1) == 5
        assert mean_d(make_star_tree(9), arr) == Fraction(5, 2)

    def test_star_hub_center_four(self):
        arr = arrange_star(4, "hub_center")
        assert arr(1) == 2
        assert length_stats(make_star_tree(4), arr).D == 4
        assert mean_d(make_star_tree(4), arr) == Fraction(4, 3)

    @pytest.mark.parametrize("n", range(2, 10, 2))
    def test_even_hub_positions_are_equivalent(self, n):
        star = make_star_tree(n)
        other = LinearArrangement((n // 2 + 1, *[p for p in range(1, n + 1) if p != n // 2 + 1]))
        assert mean_d(star, arrange_star(n, "hub_center")) == mean_d(star, other) == star_dmin_exact(n)

    def test_linear_identity(self):
        assert mean_d(make_linear_tree(9), arrange_linear(9, "identity")) == 1

    def test_linear_zigzag_nine(self):
        tree, arr = make_linear_tree(9), arrange_linear(9, "zigzag")
        assert arr.order == (1, 3, 5, 7, 9, 8, 6, 4, 2)
        s = length_stats(tree, arr)
        assert s.lengths == (8, 7, 6, 5, 4, 3, 2, 1)
        assert s.D == 36 == delta(9)
        assert crossing_count(tree, arr).C == 0

    @pytest.mark.parametrize("mode", ["identity", "zigzag"])
    def test_two_vertices(self, mode):
        assert mean_d(make_linear_tree(2), arrange_linear(2, mode)) == 1
        assert mean_d(make_star_tree(2), arrange_star(2, "hub_end")) == 1

    def test_unknown_modes(self):
        with pytest.raises(ValueError):
            arrange_star(5, "middle")
        with pytest.raises(ValueError):
            arrange_linear(5, "spiral")


class TestDecomposition:
    @pytest.mark.parametrize("n", range(3, 33))
    def test_b_beats_a_by_v_minus_one(self, n):
        for v in range(2, n):
            assert decomposition_max_D(n, v, "b") - decomposition_max_D(n, v, "a") == v - 1

    @pytest.mark.parametrize("n", range(2, 33))
    def test_extremes_reach_delta(self, n):
        assert decomposition_max_D(n, 1, "b") == decomposition_max_D(n, n - 1, "b") == delta(n)
        assert max(decomposition_max_D(n, v, "b") for v in range(1, n)) == delta(n)

    @pytest.mark.parametrize("n", range(3, 33))
    def test_matches_sum_of_subtree_maxima(self, n):
        for v in range(2, n):
            assert decomposition_max_D(n, v, "a") == delta(v) + delta(n - v + 1)
        for v in range(1, n):
            assert decomposition_max_D(n, v, "b") == n - 1 + delta(v) + delta(n - v)

    def test_nine_one_b(self):
        assert decomposition_max_D(9, 1, "b") == 36

    @pytest.mark.parametrize("n, v, kind", [(9, 1, "a"), (9, 9, "a"), (9, 0, "b"), (9, 9, "b"), (9, 3, "c")])
    def test_range(self, n, v, kind):
        with pytest.raises(ValueError):
            decomposition_max_D(n, v, kind)


class TestBruteForce:
    def test_half_permutations_cover_mirror_classes(self):
        n = 5
        half = list(half_permutations(n))
        mirrored = {tuple(n + 1 - x for x in p) for p in half}
        assert len(set(half) | mirrored) == 120

    @pytest.mark.parametrize("n", range(2, 10))
    def test_star_minimum(self, n):
        star = make_star_tree(n)
        r = brute_min_mean_length(star)
        assert r.value == star_dmin_exact(n)
        check_witness(star, r, mean_d)

    def test_path_minimum(self):
        r = brute_min_mean_length(make_linear_tree(9))
        assert r.value == 1
        assert r.witness == LinearArrangement.identity(9)

    def test_t1_minimum(self, t1):
        r = brute_min_mean_length(t1)
        assert r.value >= Fraction(19, 16)
        # the sentence's own word order is already optimal
        assert r.value == Fraction(11, 8)
        assert r.explored == 5 * 40320
        check_witness(t1, r, mean_d)

    @pytest.mark.parametrize("family", [make_star_tree, make_linear_tree])
    def test_noncrossing_maximum_six(self, family):
        tree = family(6)
        r = brute_max_noncrossing_D(tree)
        assert r.value == 15 == delta(6)
        check_witness(tree, r, total_d)
        assert crossing_count(tree, r.witness).C == 0

    def test_path_zigzag_witness(self):
        assert brute_max_noncrossing_D(make_linear_tree(6)).witness == arrange_linear(6, "zigzag")

    @pytest.mark.parametrize("n", range(2, 9))
    def test_noncrossing_maximum_families(self, n):
        for tree in (make_star_tree(n), make_linear_tree(n)):
            assert brute_max_noncrossing_D(tree).value == delta(n)

    @pytest.mark.parametrize("n", range(2, 10))
    def test_star_never_crosses(self, n):
        assert brute_max_crossings(make_star_tree(n)).value == 0

    def test_path_four_crossings(self):
        tree = make_linear_tree(4)
        r = brute_max_crossings(tree)
        assert r.value == 1
        assert r.witness.positions == (1, 3, 2, 4)
        assert crossings(tree, LinearArrangement((2, 4, 1, 3))) == 1
        check_witness(tree, r, crossings)

    def test_t1_max_crossings_meets_degree_bound(self, t1):
        r = brute_max_crossings(t1)
        assert r.value == 18 == cpairs_from_degrees(9, degree_stats(t1).mean_k2)
        check_witness(t1, r, crossings)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_bounds_against_oracles(self, n):
        for tree in enumerate_trees(n):
            d = degree_stats(tree)
            assert brute_max_noncrossing_D(tree).value <= delta(n)
            assert brute_max_crossings(tree).value <= cpairs_from_degrees(n, d.mean_k2)
            assert dmin_lower_star_ensemble(d.degrees) <= brute_min_mean_length(tree).value

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            brute_min_mean_length(make_linear_tree(10))
        assert brute_min_mean_length(make_linear_tree(4), max_n=4).value == 1
        with pytest.raises(SizeLimitError):
            brute_max_crossings(make_linear_tree(5), max_n=4)
