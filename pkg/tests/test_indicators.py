import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divopt import battery
from divopt.indicators import (
    MaxMin,
    RieszEnergy,
    SolowPolasky,
    SumIndicator,
    evaluate,
    max_min,
    parse_indicator,
    riesz_energy,
    similarity_matrix,
    solow_polasky,
    sum_indicator,
)
from divopt.spaces import DistanceMatrix, build_distance_matrix, graph_metric


@pytest.fixture(scope="module")
def two_columns():
    return battery.two_columns_matrix()


@pytest.fixture(scope="module")
def unit_square():
    return battery.unit_square_matrix()


class TestMaxMin:
    def test_two_columns_pair_be(self, two_columns):
        assert max_min(two_columns, [1, 4]) == 4.0

    def test_two_columns_full_set(self, two_columns):
        assert max_min(two_columns, range(6)) == 1.0

    def test_unit_square(self, unit_square):
        assert max_min(unit_square, range(4)) == 1.0

    def test_rejects_singleton(self, two_columns):
        with pytest.raises(ValueError):
            max_min(two_columns, [2])

    def test_skips_zero_pairs(self):
        # A duplicate pair contributes no new nonzero distance.
        dm = battery.zero_pair_space()
        assert max_min(dm, range(3)) == 1.0
        assert max_min(dm, [1, 2]) == 0.0  # all distances zero


class TestRieszEnergy:
    def test_k3_graph_metric_s1(self):
        dm = graph_metric(battery.complete_graph(3))
        assert riesz_energy(dm, range(3), 1.0) == 3.0

    def test_empty_graph_upper_bound(self):
        dm = graph_metric(battery.empty_graph(3))
        assert riesz_energy(dm, range(3), 1.0) == 6.0

    def test_all_zero_distances(self):
        dm = DistanceMatrix(np.zeros((3, 3)))
        assert riesz_energy(dm, range(3), 2.0) == 0.0

    def test_unit_square_s2(self, unit_square):
        # 4 side pairs at 1, 2 diagonals at sqrt(2): 2*(4 + 2/2) = 10.
        assert riesz_energy(unit_square, range(4), 2.0) == pytest.approx(10.0, abs=1e-12)

    def test_small_sets(self, unit_square):
        assert riesz_energy(unit_square, [0], 2.0) == 0.0
        assert riesz_energy(unit_square, [], 2.0) == 0.0

    def test_rejects_nonpositive_s(self, unit_square):
        with pytest.raises(ValueError):
            riesz_energy(unit_square, range(4), 0.0)
        with pytest.raises(ValueError):
            RieszEnergy(s=-1.0)


class TestSolowPolasky:
    def test_singleton_is_one(self, unit_square):
        assert solow_polasky(unit_square, [0], 1.0) == pytest.approx(1.0)

    def test_two_point_closed_form(self):
        for d in (0.5, 1.0, 3.0):
            dm = build_distance_matrix([(0.0,), (d,)])
            expected = 2.0 / (1.0 + math.exp(-d))
            assert solow_polasky(dm, [0, 1], 1.0) == pytest.approx(expected, abs=1e-12)

    def test_unit_square_frozen(self, unit_square):
        assert solow_polasky(unit_square, range(4), 1.0) == pytest.approx(
            2.0213498847970097, abs=1e-10
        )

    def test_duplicate_leaves_value(self):
        dm = battery.zero_pair_space()
        two = solow_polasky(dm, [0, 1], 1.0)
        three = solow_polasky(dm, range(3), 1.0)
        assert three == pytest.approx(two, abs=1e-9)

    def test_rejects_nonpositive_theta(self, unit_square):
        with pytest.raises(ValueError):
            solow_polasky(unit_square, range(4), 0.0)

    def test_similarity_matrix_shape(self, unit_square):
        sim = similarity_matrix(unit_square, range(4), 1.0)
        assert np.allclose(np.diag(sim), 1.0)
        assert np.allclose(sim, sim.T)
        assert sim[0, 1] == pytest.approx(math.exp(-1.0))


class TestSum:
    def test_two_points(self):
        dm = build_distance_matrix([(0.0,), (3.0,)])
        assert sum_indicator(dm, [0, 1]) == 3.0

    def test_unit_square(self, unit_square):
        assert sum_indicator(unit_square, range(4)) == pytest.approx(4 + 2 * math.sqrt(2))

    def test_stretch_a_exceeds_c(self):
        a = battery.stretch_matrix("A")
        c = battery.stretch_matrix("C")
        assert sum_indicator(a, range(4)) > sum_indicator(c, range(4))


def test_evaluate_dispatch(unit_square):
    assert evaluate(MaxMin(), unit_square, range(4)) == 1.0
    k3 = graph_metric(battery.complete_graph(3))
    assert evaluate(RieszEnergy(s=1.0), k3, range(3)) == 3.0
    dm = build_distance_matrix([(0.0,), (1.0,)])
    assert evaluate(SolowPolasky(theta=1.0), dm, [0, 1]) == pytest.approx(
        2.0 / (1.0 + math.exp(-1.0))
    )


def test_parse_indicator_aliases():
    assert isinstance(parse_indicator("maxmin"), MaxMin)
    assert isinstance(parse_indicator("MAX-MIN"), MaxMin)
    assert parse_indicator("riesz", s=1.5).s == 1.5
    assert parse_indicator("sp", theta=0.3).theta == 0.3
    assert isinstance(parse_indicator("sum"), SumIndicator)
    with pytest.raises(ValueError):
        parse_indicator("entropy")


def test_orientations():
    assert MaxMin().orientation == 1
    assert RieszEnergy().orientation == -1
    assert SolowPolasky().orientation == 1
    assert SumIndicator().orientation == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 10))
def test_permutation_invariance(seed, n):
    rng = np.random.default_rng(seed)
    dm = build_distance_matrix(rng.uniform(0, 10, size=(n, 2)))
    perm = list(rng.permutation(n))
    for ind in (MaxMin(), RieszEnergy(s=2.0), SolowPolasky(theta=1.0), SumIndicator()):
        a = evaluate(ind, dm, range(n))
        b = evaluate(ind, dm, perm)
        assert a == pytest.approx(b, abs=1e-10)


def test_sp_positive_definite_small_metric_spaces():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        dm = build_distance_matrix(rng.uniform(0, 10, size=(n, 2)))
        for theta in (0.1, 1.0, 10.0):
            sim = similarity_matrix(dm, range(n), theta)
            assert np.linalg.eigvalsh(sim).min() > 0


def test_riesz_strictly_decreases_when_distance_grows():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n = int(rng.integers(3, 8))
        dm = build_distance_matrix(rng.uniform(0, 10, size=(n, 2)))
        a = dm.entries.copy()
        i, j = 0, 1
        a[i, j] += 0.5
        a[j, i] += 0.5
        bumped = DistanceMatrix(a, zero_tol=dm.zero_tol)
        assert riesz_energy(bumped, range(n), 2.0) < riesz_energy(dm, range(n), 2.0)


def test_maxmin_scales_linearly():
    dm = battery.two_columns_matrix()
    scaled = DistanceMatrix(dm.entries * 3.0)
    assert max_min(scaled, range(6)) == 3.0 * max_min(dm, range(6))


def test_stretch_pair_leaves_maxmin():
    b = battery.stretch_matrix("B")
    a = battery.stretch_matrix("A")
    assert max_min(a, range(4)) == max_min(b, range(4))
