"""
Tests for exact classical probability.
"""

import numpy as np
import pytest
from docuscle_core.classical import (
    ClassicalState,
    Event,
    boost_indicators,
    complement,
    cond_prob,
    condition,
    ltp_residual,
    outcomes_from_uniforms,
    prob,
    sample_outcome,
)
from docuscle_core.random_instances import derive_generator, random_classical_state, random_event
from docuscle_types.errors import (
    ConditioningOnNullError,
    DegenerateRelevanceError,
    DimensionMismatchError,
    InvalidInputError,
)


class TestClassicalState:
    """State validation."""

    def test_rejects_negative_weight(self):
        with pytest.raises(InvalidInputError):
            ClassicalState(np.array([1.1, -0.1]))

    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidInputError, match="sum"):
            ClassicalState(np.array([0.5, 0.4]))

    def test_rejects_nan(self):
        with pytest.raises(InvalidInputError):
            ClassicalState(np.array([np.nan, 1.0]))

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            ClassicalState(np.array([]))

    def test_weights_are_read_only(self, uniform4):
        with pytest.raises(ValueError):
            uniform4.weights[0] = 1.0

    def test_input_array_not_aliased(self):
        w = np.array([0.5, 0.5])
        state = ClassicalState(w)
        w[0] = 0.9
        assert state.weights[0] == 0.5

    def test_point_mass(self):
        state = ClassicalState.point_mass(3, 2)
        assert state.weights.tolist() == [0.0, 0.0, 1.0]


class TestEvent:
    """Event construction and set operations."""

    def test_from_indices_out_of_range(self):
        with pytest.raises(InvalidInputError):
            Event.from_indices(4, [4])

    def test_non_boolean_indicator(self):
        with pytest.raises(InvalidInputError):
            Event(np.array([0, 2, 1]))

    def test_complement(self, events):
        assert complement(events(0, 1)) == events(2, 3)

    def test_intersection_and_union(self, events):
        assert (events(0, 1) & events(1, 2)) == events(1)
        assert (events(0, 1) | events(1, 2)) == events(0, 1, 2)

    def test_mismatched_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            Event.full(2) & Event.full(3)


class TestProb:
    """P(A)."""

    def test_full_space(self, uniform4):
        assert prob(uniform4, Event.full(4)) == 1.0

    def test_empty_set(self, skewed4):
        assert prob(skewed4, Event.empty(4)) == 0.0

    def test_single_point(self, uniform4, events):
        assert prob(uniform4, events(0)) == 0.25

    def test_dimension_mismatch(self, uniform4):
        with pytest.raises(DimensionMismatchError):
            prob(uniform4, Event.full(3))


class TestCondProb:
    """P(A | B)."""

    def test_identity_case(self, skewed4, events):
        assert cond_prob(skewed4, events(1, 2), events(1, 2)) == pytest.approx(1.0)

    def test_disjoint(self, skewed4, events):
        assert cond_prob(skewed4, events(0), events(1, 2)) == 0.0

    def test_uniform_counting(self, uniform4, events):
        assert cond_prob(uniform4, events(0, 1), events(1, 2)) == pytest.approx(0.5)

    def test_null_condition(self, events):
        state = ClassicalState(np.array([0.5, 0.5, 0.0, 0.0]))
        with pytest.raises(ConditioningOnNullError):
            cond_prob(state, events(0), events(2, 3))


class TestCondition:
    """Renormalised restriction."""

    def test_full_space_is_identity(self, uniform4):
        assert condition(uniform4, Event.full(4)) == uniform4

    def test_uniform_restriction(self, uniform4, events):
        result = condition(uniform4, events(1, 2))
        np.testing.assert_allclose(result.weights, [0.0, 0.5, 0.5, 0.0])

    def test_renormalisation(self, events):
        state = ClassicalState(np.array([0.1, 0.2, 0.3, 0.4]))
        result = condition(state, events(2, 3))
        np.testing.assert_allclose(result.weights, [0.0, 0.0, 3 / 7, 4 / 7], atol=1e-15)

    def test_null_condition(self, events):
        state = ClassicalState.point_mass(4, 0)
        with pytest.raises(ConditioningOnNullError):
            condition(state, events(1))


class TestLtpResidual:
    """The law of total probability holds classically."""

    def test_uniform_instance(self, uniform4, events):
        assert ltp_residual(uniform4, events(0, 1), events(0, 2)) == pytest.approx(0.0, abs=1e-12)

    def test_random_dim16(self):
        rng = derive_generator(2024)
        state = random_classical_state(16, None, rng)
        x = random_event(16, 7, rng)
        r = random_event(16, 5, rng)
        assert abs(ltp_residual(state, x, r)) <= 1e-12

    def test_degenerate_relevance(self, uniform4, events):
        with pytest.raises(DegenerateRelevanceError):
            ltp_residual(uniform4, events(0), Event.full(4))
        with pytest.raises(DegenerateRelevanceError):
            ltp_residual(uniform4, events(0), Event.empty(4))


class TestBoostIndicators:
    """Relevance boost against naturalness."""

    def test_universal_expansion_term(self, skewed4, events):
        report = boost_indicators(skewed4, Event.full(4), events(0, 1))
        assert report.x == pytest.approx(report.r)
        assert report.p == report.q == 1.0
        assert not report.boost and not report.natural
        assert report.tie

    def test_x_inside_r(self, uniform4, events):
        report = boost_indicators(uniform4, events(0), events(0, 1))
        assert report.r == pytest.approx(0.5)
        assert report.p == pytest.approx(0.5)
        assert report.q == 0.0
        assert report.x == pytest.approx(1.0)
        assert report.boost and report.natural
        assert not report.tie

    def test_enumerated_instance(self, skewed4, events):
        report = boost_indicators(skewed4, events(1, 2), events(0, 1))
        assert report.r == pytest.approx(0.5)
        assert report.p == pytest.approx(0.2)
        assert report.q == pytest.approx(0.4)
        assert report.x == pytest.approx(0.1 / 0.3)
        assert not report.boost and not report.natural

    def test_ltp_residual_recorded(self, skewed4, events):
        report = boost_indicators(skewed4, events(1, 2), events(0, 1))
        assert abs(report.ltp_residual) <= 1e-12

    def test_null_expansion(self, skewed4, events):
        with pytest.raises(ConditioningOnNullError):
            boost_indicators(skewed4, Event.empty(4), events(0, 1))


class TestSampling:
    """Inverse-CDF sampling."""

    def test_point_mass_always_hits(self):
        state = ClassicalState.point_mass(4, 2)
        rng = derive_generator(1)
        assert {sample_outcome(state, rng) for _ in range(200)} == {2}

    @pytest.mark.parametrize("weights", [[0.5, 0.5], [0.9, 0.1]])
    def test_frequency_concentration(self, weights):
        state = ClassicalState(np.array(weights))
        n = 100_000
        outcomes = outcomes_from_uniforms(state, derive_generator(7).random(n))
        freq = np.mean(outcomes == 0)
        sigma = np.sqrt(weights[0] * (1 - weights[0]) / n)
        assert abs(freq - weights[0]) <= 5 * sigma

    def test_zero_weight_outcome_never_drawn(self):
        state = ClassicalState(np.array([0.5, 0.0, 0.5, 0.0]))
        u = np.array([0.0, 0.4999999, 0.5, 0.75, np.nextafter(1.0, 0.0)])
        assert set(outcomes_from_uniforms(state, u).tolist()) <= {0, 2}
