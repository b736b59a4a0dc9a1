"""Tests for the exponent calculus, regions, witnesses and verdicts"""

import math

import numpy as np
import pytest

from src.exponents import (
    AdmissibleRange,
    ExponentPoint,
    InfinityDescriptor,
    ProblemDims,
    RegionCase,
    RegionSpec,
    ZeroDescriptor,
    alpha_123,
    alpha_star,
    classify_gamma,
    compute_verdict,
    find_xi_witness,
    normalize_beta,
    q_double_star,
    q_star,
    q_star_lower,
    region_boundary,
    region_membership,
    region_slice,
    thm0_range,
    thm1_branches,
    thm1_threshold,
    thm2_branch,
    thm2_threshold,
    thm2_threshold_direct,
    threshold_lines,
    validate_xi,
    xi_interval,
)
from src.utils.errors import DomainError, HypothesisViolationError, UndefinedAtGammaError


@pytest.fixture
def dims():
    return ProblemDims(N=3, p=2.0)


class TestProblemDims:
    """Test dimension validation and derived exponents"""

    def test_derived_exponents(self, dims):
        assert dims.p_star == 6.0
        assert dims.gamma_star_star == 4.0
        assert dims.strauss_exponent == 0.5
        assert dims.decay_exponent(0.0) == 1.0

    def test_rejects_p_at_least_N(self):
        with pytest.raises(DomainError, match="1 < p < N"):
            ProblemDims(N=3, p=3.0)

    def test_rejects_fractional_dimension(self):
        with pytest.raises(DomainError):
            ProblemDims(N=2.5, p=2.0)


class TestAdmissibleRange:
    """Test open exponent intervals"""

    def test_open_ends(self):
        interval = AdmissibleRange(1.0, 6.0)
        assert interval.contains(3.0)
        assert not interval.contains(6.0)
        assert not interval.contains(1.0)

    def test_intersection_of_touching_intervals_is_empty(self):
        assert AdmissibleRange(1.0, 6.0).intersect(AdmissibleRange(6.0)).empty

    def test_representative(self):
        assert AdmissibleRange(1.0, 6.0).representative() == 3.5
        assert AdmissibleRange(2.0).representative() == 3.0
        with pytest.raises(DomainError):
            AdmissibleRange(2.0, 2.0).representative()


class TestThresholds:
    """Test the closed-form threshold functions"""

    def test_alpha_star(self, dims):
        assert alpha_star(1.0, dims) == 0.0
        assert alpha_star(0.0, dims) == -2.5

    def test_alpha_star_branches_agree_at_inverse_p(self):
        for N, p in [(3, 2.0), (4, 1.5), (5, 3.0)]:
            d = ProblemDims(N, p)
            beta = 1.0 / p
            assert np.isclose(p * beta - 1.0 - (p - 1.0) * N / p, -(1.0 - beta) * N)
            assert np.isclose(alpha_star(beta, d), -(p - 1.0) * N / p)

    def test_alpha_star_rejects_beta_outside_unit_interval(self, dims):
        with pytest.raises(DomainError):
            alpha_star(1.5, dims)

    def test_q_star(self, dims):
        assert q_star(0.0, 0.0, dims) == 6.0
        assert q_star(1.0, 0.5, dims) == 6.0
        assert q_star(-1.0, 0.0, dims) == 4.0

    def test_improved_thresholds(self, dims):
        assert np.isclose(q_star_lower(0.0, 0.0, 1.0, dims), 3.0)
        assert np.isclose(q_double_star(0.0, 0.0, 1.0, dims), 10.0 / 3.0)
        assert np.isclose(q_double_star(0.0, 0.0, 3.0, dims), 14.0)

    def test_undefined_gammas(self, dims):
        with pytest.raises(UndefinedAtGammaError):
            q_star_lower(0.0, 0.0, 3.0, dims)
        with pytest.raises(UndefinedAtGammaError):
            q_double_star(0.0, 0.0, 4.0, dims)

    def test_alpha_123(self, dims):
        assert alpha_123(0.0, 2.0, dims) == pytest.approx((-2.0, -3.0, -2.5))
        assert alpha_123(0.5, 2.0, dims) == pytest.approx((-1.0, -1.5, -1.5))
        alpha_1, alpha_2, _ = alpha_123(1.0, 2.5, dims)
        assert alpha_1 == 0.0 and alpha_2 == 0.0

    def test_thm1_threshold(self, dims):
        assert thm1_threshold(0.0, 0.0, dims) == 6.0
        assert thm1_threshold(-3.0, 0.0, dims) == 1.0
        assert thm1_threshold(0.0, 1.0, dims) == 2.0

    def test_thm1_branches(self, dims):
        assert thm1_branches(0.0, 0.0, dims) == ("q_star", 6.0)
        assert thm1_branches(-3.0, 0.0, dims) == ("max(1,p*beta)", 1.0)

    def test_thm2_threshold_branches(self, dims):
        assert np.isclose(thm2_threshold(0.0, 0.0, 2.0, dims), 6.0)
        assert thm2_branch(-2.25, 0.0, 2.0, dims) == "q_star_lower"
        assert np.isclose(thm2_threshold(-2.25, 0.0, 2.0, dims), 1.5)
        assert thm2_threshold(-2.75, 0.0, 2.0, dims) == 1.0

    def test_thm2_rejects_gamma_above_p(self, dims):
        with pytest.raises(DomainError):
            thm2_threshold(0.0, 0.0, 2.5, dims)

    def test_negative_beta_is_normalized(self):
        assert normalize_beta(1.0, -0.5, 2.0) == (2.0, 0.0)
        assert normalize_beta(1.0, 0.5, 2.0) == (1.0, 0.5)


class TestThresholdProperties:
    """Property sweeps over random exponents"""

    @pytest.mark.parametrize("N, p", [(3, 2.0), (4, 1.5)])
    def test_gamma_equal_p_collapse(self, N, p):
        """q_* and q_** reduce to q* at gamma = p"""
        d = ProblemDims(N, p)
        rng = np.random.default_rng(0)
        for alpha, beta in zip(rng.uniform(-5, 5, 10_000), rng.uniform(0, 1, 10_000)):
            reference = q_star(alpha, beta, d)
            assert abs(q_star_lower(alpha, beta, p, d) - reference) < 1e-12 * max(1.0, abs(reference))
            assert abs(q_double_star(alpha, beta, p, d) - reference) < 1e-12 * max(1.0, abs(reference))

    def test_piecewise_threshold_matches_direct_maximum(self, dims):
        rng = np.random.default_rng(1)
        n = 10_000
        for alpha, beta, gamma in zip(rng.uniform(-5, 5, n), rng.uniform(0, 1, n), rng.uniform(-1, 2, n)):
            assert thm2_threshold(alpha, beta, gamma, dims) == pytest.approx(
                thm2_threshold_direct(alpha, beta, gamma, dims), rel=1e-12, abs=1e-12
            )

    def test_region_grows_with_gamma(self, dims):
        rng = np.random.default_rng(2)
        gammas = np.sort(rng.uniform(dims.p, dims.p + 6.0, (10, 2)), axis=1)
        for alpha, q, beta in zip(rng.uniform(-5, 5, 1000), rng.uniform(1, 20, 1000), rng.uniform(0, 1, 1000)):
            point = ExponentPoint(alpha, q)
            for g1, g2 in gammas:
                if region_membership(point, RegionSpec.build(beta, g1, dims), dims):
                    assert region_membership(point, RegionSpec.build(beta, g2, dims), dims)


class TestRegion:
    """Test region membership, slices and boundaries"""

    def test_classify_gamma(self, dims):
        assert classify_gamma(2.5, dims) is RegionCase.BELOW_N
        assert classify_gamma(3.0, dims) is RegionCase.AT_N
        assert classify_gamma(3.5, dims) is RegionCase.BETWEEN_N_AND_STAR
        assert classify_gamma(4.0 + 1e-14, dims) is RegionCase.AT_STAR
        assert classify_gamma(5.0, dims) is RegionCase.ABOVE_STAR
        with pytest.raises(DomainError):
            classify_gamma(1.5, dims)

    def test_membership_at_N(self, dims):
        region = RegionSpec.build(0.0, 3.0, dims)
        assert region_membership(ExponentPoint(0.0, 4.0), region, dims)

    def test_boundary_excluded(self, dims):
        region = RegionSpec.build(0.0, 2.0, dims)
        assert not region_membership(ExponentPoint(0.0, 6.0), region, dims)

    def test_slice_agrees_with_membership(self, dims):
        rng = np.random.default_rng(3)
        for gamma in (2.5, 3.0, 3.5, 4.0, 5.0):
            region = RegionSpec.build(0.25, gamma, dims)
            for alpha, q in zip(rng.uniform(-5, 5, 200), rng.uniform(1, 20, 200)):
                interval = region_slice(alpha, region, dims)
                member = region_membership(ExponentPoint(alpha, q), region, dims)
                assert member == (not interval.empty and interval.contains(q))

    def test_boundary_corners(self, dims):
        boundary = region_boundary(RegionSpec.build(0.0, 2.0, dims), (-3.0, 1.0), 41, dims)
        corners = boundary.metadata()["corners"]
        assert corners["alpha_1"] == -2.0
        assert corners["max_alpha_2_alpha_3"] == -2.5

    def test_boundary_angle_for_beta_one(self, dims):
        boundary = region_boundary(RegionSpec.build(1.0, 2.5, dims), (-1.0, 3.0), 21, dims)
        assert len(boundary.alphas) > 0
        assert np.all(boundary.lower == 2.0)

    def test_epigraph_above_star(self, dims):
        boundary = region_boundary(RegionSpec.build(0.0, 5.0, dims), (-6.0, 4.0), 51, dims)
        assert boundary.metadata()["case"] == "AboveStar"
        assert boundary.to_frame()["q_upper"].isna().all()

    def test_threshold_lines_skip_undefined(self, dims):
        lines = threshold_lines(RegionSpec.build(0.0, 3.0, dims), dims)
        assert lines["q_star_lower"] is None
        assert lines["q_double_star"] == pytest.approx({"slope": 4.0, "intercept": 14.0})

    def test_rejects_n_samples_below_two(self, dims):
        with pytest.raises(DomainError):
            region_boundary(RegionSpec.build(0.0, 2.0, dims), (-3.0, 1.0), 1, dims)


class TestWitness:
    """Test shift witnesses"""

    def test_hand_computed_interval(self, dims):
        point = ExponentPoint(0.0, 4.0)
        interval = xi_interval(point, RegionSpec.build(0.0, 3.0, dims), dims)
        assert (interval.lower, interval.upper) == (0.5, 1.0)
        assert interval.lower_closed and interval.upper_closed

        assert find_xi_witness(point, 0.0, 3.0, dims, pick="lower").xi == 0.5
        assert find_xi_witness(point, 0.0, 3.0, dims).xi == 0.75

    def test_no_witness_on_boundary(self, dims):
        assert find_xi_witness(ExponentPoint(0.0, 6.0), 0.0, 2.0, dims) is None

    def test_rejects_unknown_policy(self, dims):
        with pytest.raises(DomainError):
            find_xi_witness(ExponentPoint(0.0, 4.0), 0.0, 3.0, dims, pick="upper")

    def test_rejects_gamma_below_p(self, dims):
        with pytest.raises(DomainError):
            find_xi_witness(ExponentPoint(0.0, 4.0), 0.0, 1.0, dims)

    def test_witness_equivalent_to_membership(self, dims):
        """Random points spanning every case: witness exists iff the point is in the region"""
        rng = np.random.default_rng(4)
        star = dims.gamma_star_star
        gamma_draws = [
            lambda: rng.uniform(dims.p, dims.N),
            lambda: float(dims.N),
            lambda: rng.uniform(dims.N, star),
            lambda: star,
            lambda: rng.uniform(star, star + 4.0),
        ]
        for choice in rng.integers(0, 5, 10_000):
            gamma = float(gamma_draws[int(choice)]())
            alpha, q, beta = rng.uniform(-5, 5), rng.uniform(1, 20), rng.uniform(0, 1)
            point = ExponentPoint(alpha, q)
            witness = find_xi_witness(point, beta, gamma, dims)
            member = region_membership(point, RegionSpec.build(beta, gamma, dims), dims)
            assert (witness is not None) == member
            if witness is not None:
                assert validate_xi(point, beta, gamma, witness.xi, dims)


class TestVerdict:
    """Test compute_verdict on the classical configurations"""

    def test_bounded_potential(self, dims):
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0)
        inf = InfinityDescriptor(R2=1.0, alphaInf=0.0, betaInf=1.0, LambdaInf=1.0, gammaInf=0.0, lambdaInf=1.0)
        verdict = compute_verdict(zero, inf, dims)
        assert (verdict.q1.lower, verdict.q1.upper) == (1.0, 6.0)
        assert verdict.q2.lower == pytest.approx(2.0)
        assert verdict.single_space.lower == pytest.approx(2.0)
        assert verdict.single_space.upper == 6.0
        assert verdict.status == "conclusive"

    def test_vanishing_potential(self, dims):
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0)
        inf = InfinityDescriptor(R2=1.0, alphaInf=0.0, betaInf=0.0, LambdaInf=1.0)
        verdict = compute_verdict(zero, inf, dims)
        assert (verdict.q1.lower, verdict.q1.upper) == (1.0, 6.0)
        assert verdict.q2.lower == 6.0 and math.isinf(verdict.q2.upper)
        assert verdict.single_space.empty
        assert [c.criterion for c in verdict.citations] == ["THM0", "THM1"]

    def test_singular_potential_near_zero(self, dims):
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0, gamma0=3.0, lambda0=1.0)
        inf = InfinityDescriptor(R2=1.0, alphaInf=0.0, betaInf=0.0, LambdaInf=1.0)
        verdict = compute_verdict(zero, inf, dims)
        assert verdict.q1.lower == 1.0
        assert verdict.q1.upper == pytest.approx(14.0)
        assert verdict.citations[0].criterion == "THM3"
        assert verdict.citations[0].detail == "case AtN"
        assert verdict.witness is not None

    def test_thm0_ranges(self, dims):
        assert thm0_range(ZeroDescriptor(1.0, 1.0, 1.0, 1.0), dims) == AdmissibleRange(2.0, 4.0)
        with pytest.raises(HypothesisViolationError, match="alpha0 > alpha"):
            thm0_range(ZeroDescriptor(1.0, 0.0, 1.0, 1.0), dims)

    def test_failed_hypothesis_is_inconclusive_unless_strict(self, dims):
        zero = ZeroDescriptor(R1=1.0, alpha0=-3.0, beta0=0.0, Lambda0=1.0)
        inf = InfinityDescriptor(R2=1.0, alphaInf=0.0, betaInf=0.0, LambdaInf=1.0)
        verdict = compute_verdict(zero, inf, dims)
        assert verdict.q1 is None
        assert verdict.status == "partial"
        assert verdict.warnings
        with pytest.raises(HypothesisViolationError):
            compute_verdict(zero, inf, dims, strict=True)

    def test_improved_criterion_needs_three_dimensions(self):
        d = ProblemDims(N=2, p=1.5)
        zero = ZeroDescriptor(R1=1.0, alpha0=0.0, beta0=0.0, Lambda0=1.0, gamma0=1.8, lambda0=1.0)
        inf = InfinityDescriptor(R2=1.0, alphaInf=0.0, betaInf=0.0, LambdaInf=1.0)
        verdict = compute_verdict(zero, inf, d)
        assert verdict.citations[0].criterion == "THM0"
        assert any("N >= 3" in w for w in verdict.warnings)
