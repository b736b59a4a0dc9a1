"""Tests for sum-space splittings, upper norms and vanishing criteria"""

import numpy as np
import pytest

from src.exponents import ProblemDims
from src.numerics import LogGrid, RadialGridFunction, bump, random_bumps
from src.potentials import PowerLawPotential, constant_potential
from src.sum_space import (
    NORM_DECAY_RATIO,
    SplitSet,
    Splitting,
    SumSpaceParams,
    check_vanishing_criterion,
    norm_decay_ratio,
    prop_LL_inequality_check,
    set_integral,
    set_norm,
    split_integral,
    sum_norm_upper,
    threshold_grid,
)
from src.utils.errors import DomainError


@pytest.fixture
def dims():
    return ProblemDims(N=3, p=2.0)


@pytest.fixture
def grid():
    return LogGrid(-2, 2, 128)


@pytest.fixture
def params(dims):
    return SumSpaceParams(2.0, 4.0, constant_potential(1.0), dims)


@pytest.fixture
def u(grid):
    return bump(grid, 1.5, 0.8, amplitude=0.7)


class TestSumSpaceParams:
    """Test exponent validation"""

    def test_sorted_exponents(self, dims):
        params = SumSpaceParams(4.0, 2.0, constant_potential(1.0), dims)
        assert (params.q1, params.q2) == (2.0, 4.0)
        assert params.swapped
        assert params.original_order == (4.0, 2.0)

    def test_rejects_invalid_exponents(self, dims):
        with pytest.raises(DomainError):
            SumSpaceParams(1.0, 4.0, constant_potential(1.0), dims)
        with pytest.raises(DomainError):
            SumSpaceParams(2.0, np.inf, constant_potential(1.0), dims)


class TestSplitting:
    """Test level-set splittings"""

    @pytest.mark.parametrize("threshold", [0.0, 0.1, 0.35, 0.7, np.inf])
    def test_reconstruction_is_exact(self, u, threshold):
        split = Splitting.of(u, threshold)
        assert split.reconstructs(u)

    def test_parts_are_disjoint(self, u):
        split = Splitting.of(u, 0.35)
        assert not np.any((split.u1.values != 0.0) & (split.u2.values != 0.0))
        assert np.all(np.abs(split.u2.values) <= 0.35)

    def test_reference_level_sets(self, grid, u):
        reference = bump(grid, 1.2, 0.4)
        split = Splitting.of(u, 0.5, reference=reference)
        assert split.reconstructs(u)
        assert np.all(split.u1.values[np.abs(reference.values) <= 0.5] == 0.0)

    def test_rejects_negative_threshold(self, u):
        with pytest.raises(DomainError):
            Splitting.of(u, -1.0)

    def test_rejects_foreign_reference(self, u):
        other = bump(LogGrid(-2, 2, 64), 1.5, 0.8)
        with pytest.raises(DomainError):
            Splitting.of(u, 0.5, reference=other)


class TestSumNormUpper:
    """Test the level-set upper bound of the sum norm"""

    def test_threshold_grid(self, u):
        thresholds = threshold_grid(u)
        assert len(thresholds) == 66
        assert thresholds[0] == 0.0 and thresholds[-1] == np.inf

    def test_threshold_grid_of_zero_function(self, grid):
        zero = RadialGridFunction(grid.nodes, np.zeros_like(grid.nodes))
        assert threshold_grid(zero).tolist() == [0.0, np.inf]

    def test_bounded_by_single_exponent_norms(self, u, params):
        result = sum_norm_upper(u, params)
        assert result.value <= set_norm(u, 2.0, params) * (1.0 + 1e-12)
        assert result.value <= set_norm(u, 4.0, params) * (1.0 + 1e-12)
        assert result.value == max(result.q1_norm, result.q2_norm)

    def test_single_threshold(self, u, params):
        result = sum_norm_upper(u, params, thresholds=[0.0])
        assert np.isclose(result.value, set_norm(u, 2.0, params))
        assert result.q2_integral == 0.0

    def test_zero_function(self, grid, params):
        zero = RadialGridFunction(grid.nodes, np.zeros_like(grid.nodes))
        result = sum_norm_upper(zero, params)
        assert result.value == 0.0
        assert result.threshold == 0.0

    def test_homogeneous_under_dyadic_scaling(self, u, params):
        assert np.isclose(sum_norm_upper(u.scaled(0.5), params).value, 0.5 * sum_norm_upper(u, params).value)

    def test_rejects_empty_thresholds(self, u, params):
        with pytest.raises(DomainError):
            sum_norm_upper(u, params, thresholds=[])


class TestSplitSets:
    """Test subsets of R^N used by the criteria"""

    def test_whole_and_empty(self, u, params):
        assert np.isclose(split_integral(u, SplitSet.whole(), params), set_integral(u, 2.0, params))
        assert np.isclose(split_integral(u, SplitSet.empty(), params), set_integral(u, 4.0, params))

    def test_annulus_mask(self, u):
        mask = SplitSet.annulus(1.5, 2.0).mask(u)
        assert np.all(u.nodes[mask] > 1.5)
        assert np.all(u.nodes[mask] <= 2.0)

    def test_describe(self):
        assert SplitSet.level(0.5).describe() == "{|u| > 0.5}"
        assert SplitSet.annulus(1.0, 2.0).describe() == "{1 < |x| <= 2}"
        assert SplitSet.whole().describe() == "whole"

    def test_rejects_invalid_sets(self):
        with pytest.raises(DomainError):
            SplitSet("ball")
        with pytest.raises(DomainError):
            SplitSet.annulus(2.0, 1.0)


class TestBoundedSetInequalities:
    """Test the two inequalities on bounded sets"""

    def test_random_bumps(self, grid, params):
        rng = np.random.default_rng(7)
        bumps = random_bumps(grid, rng, 100, (1.0, 2.0), max_amplitude=0.5)
        reports = [prop_LL_inequality_check(b, SplitSet.annulus(1.0, 2.0), params) for b in bumps]
        assert all(report.passed for report in reports)
        assert all(report.holds_unit for report in reports)

    def test_tuple_annulus(self, u, params):
        report = prop_LL_inequality_check(u, (1.0, 2.0), params)
        assert report.passed
        assert report.slack is not None and report.slack > 0.0

    def test_unit_bound_skipped_for_large_functions(self, u, params):
        report = prop_LL_inequality_check(u.scaled(4.0), SplitSet.whole(), params)
        assert report.sup_norm > 1.0
        assert report.holds_unit is None
        assert report.slack is None
        assert report.holds_power


class TestVanishingCriterion:
    """Test the vanishing criterion on canonical sequences"""

    @pytest.fixture
    def singular(self, dims):
        return SumSpaceParams(2.0, 4.0, PowerLawPotential(1.0, -6.0), dims)

    @pytest.fixture
    def grid(self):
        """Fine enough for several nodes per unit-width bump out to r = 32"""
        return LogGrid(-1, 2, 512)

    def test_scaled_sequence_vanishes(self, grid, singular):
        base = bump(grid, 1.0, 1.0)
        sequence = [base.scaled(2.0**-k) for k in range(11)]
        report = check_vanishing_criterion(sequence, singular, sets=[SplitSet.whole()] * len(sequence))
        assert report.holds
        assert report.first_index[1e-3] is not None

    @pytest.mark.parametrize("N", [3, 4, 5])
    @pytest.mark.parametrize("q2", [2.5, 4.0])
    def test_translated_sequence_vanishes(self, grid, N, q2):
        """K = r^-(N+3) makes the mass of a unit bump at c decay like c^-4 in every dimension"""
        K = PowerLawPotential(1.0, -(N + 3.0))
        params = SumSpaceParams(2.0, q2, K, ProblemDims(N=N, p=2.0))
        sequence = [bump(grid, float(c), 1.0) for c in range(1, 33)]
        sets = [SplitSet.annulus(0.5 * c) for c in range(1, 33)]
        report = check_vanishing_criterion(sequence, params, sets=sets)
        assert report.criterion_holds
        assert report.norms_vanishing
        assert report.norm_ratio < NORM_DECAY_RATIO

    @pytest.mark.parametrize("N", [4, 5])
    def test_scaled_sequence_vanishes_in_higher_dimensions(self, grid, N):
        K = PowerLawPotential(1.0, -(N + 3.0))
        params = SumSpaceParams(2.0, 2.5, K, ProblemDims(N=N, p=2.0))
        base = bump(grid, 1.0, 1.0)
        sequence = [base.scaled(2.0**-k) for k in range(11)]
        sets = [SplitSet.whole()] * len(sequence)
        report = check_vanishing_criterion(sequence, params, sets=sets)
        assert report.holds
        assert np.isclose(report.norm_ratio, 2.0**-10, rtol=1e-6)

    def test_constant_sequence_does_not_vanish(self, grid, singular):
        sequence = [bump(grid, 1.0, 1.0)] * 8
        report = check_vanishing_criterion(sequence, singular)
        assert not report.holds
        assert report.first_index[1e-1] is None
        assert not report.norms_vanishing

    def test_small_rises_do_not_break_a_decaying_trend(self):
        norms = [1.0, 0.6, 0.61, 0.3, 0.31, 0.1]
        assert np.isclose(norm_decay_ratio(norms), 0.1)

    def test_decay_ratio_edge_cases(self):
        assert norm_decay_ratio([1.0]) is None
        assert norm_decay_ratio([0.0, 0.0]) == 0.0
        assert norm_decay_ratio([0.0, 1.0]) is None
        assert norm_decay_ratio([2.0, 2.0]) == 1.0

    def test_report_serializes(self, grid, singular):
        report = check_vanishing_criterion([bump(grid, 1.0, 1.0)], singular)
        payload = report.as_dict()
        assert [entry["eps"] for entry in payload["per_eps"]] == [1e-1, 1e-2, 1e-3]
        assert payload["norms_vanishing"] is False
        assert payload["norm_ratio"] is None

    def test_rejects_empty_sequence(self, singular):
        with pytest.raises(DomainError):
            check_vanishing_criterion([], singular)

    def test_rejects_mismatched_sets(self, grid, singular):
        with pytest.raises(DomainError):
            check_vanishing_criterion([bump(grid, 1.0, 1.0)], singular, sets=[])
