"""
Tests for learner states, update rules and their closed forms.
"""

import numpy as np
import pytest

from ftxl_lab.errors import InvalidConfigurationError, ShapeMismatchError
from ftxl_lab.games.profiles import GameLayout
from ftxl_lab.learners import identities
from ftxl_lab.learners.state import (
    FTRL, FTXL, FTXL_CONSTANT, FTXL_VANISHING, FeedbackSignal, initial_state,
)
from ftxl_lab.learners.steps import ftxl_step, step, strategies_of
from ftxl_lab.regularizers import ENTROPIC

LAYOUT = GameLayout((2,))
GAP_SIGNAL = FeedbackSignal(LAYOUT, [1.0, 0.0])


def run_gap(variant, steps, eta, friction=0.0):
    """Score difference y_B - y_A after `steps` updates with a constant unit gap."""
    state = initial_state(LAYOUT, variant, eta, friction)
    for _ in range(steps):
        state = step(state, GAP_SIGNAL)
    return state, state.y.flat[1] - state.y.flat[0]


def test_ftrl_step():
    state = step(initial_state(LAYOUT, FTRL, eta=0.1), GAP_SIGNAL)
    np.testing.assert_allclose(state.y.flat, [0.1, 0.0])
    assert state.n == 2


def test_ftxl_step():
    state = step(initial_state(LAYOUT, FTXL, eta=0.1), GAP_SIGNAL)
    np.testing.assert_allclose(state.p.flat, [0.1, 0.0])
    np.testing.assert_allclose(state.y.flat, [0.01, 0.0])
    state = step(state, GAP_SIGNAL)
    np.testing.assert_allclose(state.p.flat, [0.2, 0.0])
    np.testing.assert_allclose(state.y.flat, [0.03, 0.0])


def test_constant_friction_step():
    state = step(initial_state(LAYOUT, FTXL_CONSTANT, eta=0.1, friction=2.0), GAP_SIGNAL)
    state = step(state, GAP_SIGNAL)
    np.testing.assert_allclose(state.p.flat, [0.1 * 0.8 + 0.1, 0.0])


def test_vanishing_friction_without_friction_is_ftxl(rng):
    plain = initial_state(LAYOUT, FTXL, eta=0.05)
    damped = initial_state(LAYOUT, FTXL_VANISHING, eta=0.05, friction=0.0)
    for _ in range(50):
        signal = FeedbackSignal(LAYOUT, rng.normal(size=2))
        plain, damped = step(plain, signal), step(damped, signal)
    assert np.array_equal(plain.y.flat, damped.y.flat)
    assert np.array_equal(plain.p.flat, damped.p.flat)


@pytest.mark.parametrize('variant', [FTXL_VANISHING, FTXL_CONSTANT])
def test_friction_must_keep_damping_positive(variant):
    with pytest.raises(InvalidConfigurationError):
        initial_state(LAYOUT, variant, eta=0.5, friction=2.0)


def test_step_checks_variant_and_shape():
    with pytest.raises(InvalidConfigurationError):
        ftxl_step(initial_state(LAYOUT, FTRL), GAP_SIGNAL)
    with pytest.raises(ShapeMismatchError):
        step(initial_state(GameLayout((3,))), GAP_SIGNAL)


def test_state_is_immutable():
    state = initial_state(LAYOUT)
    after = step(state, GAP_SIGNAL)
    assert state.n == 1
    np.testing.assert_array_equal(state.y.flat, [0.0, 0.0])
    assert after is not state


def test_initial_state_modes(rng):
    layout = GameLayout((3, 3))
    near = initial_state(layout, init='near', equilibrium=(0, 1), gap=2.5)
    np.testing.assert_array_equal(near.y.flat, [0, -2.5, -2.5, -2.5, 0, -2.5])
    random = initial_state(layout, init='random', bound=1.0, rng=rng)
    assert np.all(np.abs(random.y.flat) <= 1.0)
    np.testing.assert_array_equal(random.p.flat, 0.0)
    with pytest.raises(InvalidConfigurationError):
        initial_state(layout, init='near')
    with pytest.raises(InvalidConfigurationError):
        initial_state(layout, init='sideways')


def test_strategies_of_state():
    state = initial_state(GameLayout((2, 3)))
    np.testing.assert_allclose(strategies_of(state, ENTROPIC).flat, [0.5, 0.5, 1 / 3, 1 / 3, 1 / 3])


def test_feedback_signal_model():
    with pytest.raises(InvalidConfigurationError):
        FeedbackSignal(LAYOUT, [0.0, 0.0], model='oracle')


class TestClosedForms:

    @pytest.mark.parametrize('n', [1, 2, 10, 1000, 10000])
    def test_undamped_gap(self, n):
        # dyadic step keeps every partial sum exact
        eta = 2.0 ** -7
        _, z = run_gap(FTXL, n, eta=eta)
        assert z == pytest.approx(identities.undamped_gap(n, eta), rel=1e-12)

    def test_undamped_gap_decimal_step(self):
        _, z = run_gap(FTXL, 10000, eta=0.01)
        assert z == pytest.approx(identities.undamped_gap(10000, 0.01), rel=1e-10)

    def test_undamped_gap_example(self):
        assert identities.undamped_gap(100, 0.01) == pytest.approx(-0.505)

    def test_ftrl_is_linear(self):
        _, z = run_gap(FTRL, 1000, eta=0.01)
        assert z == pytest.approx(-10.0, rel=1e-10)

    @pytest.mark.parametrize('n', [1, 5, 500])
    def test_constant_friction(self, n):
        state, z = run_gap(FTXL_CONSTANT, n, eta=0.01, friction=2.0)
        assert z == pytest.approx(identities.constant_friction_gap(n, 0.01, 2.0), rel=1e-10)
        momentum = state.p.flat[1] - state.p.flat[0]
        assert momentum == pytest.approx(identities.constant_friction_momentum(n, 0.01, 2.0), rel=1e-10)

    def test_vanishing_friction_leading_order(self):
        n = 5000
        _, z = run_gap(FTXL_VANISHING, n, eta=0.01, friction=3.0)
        coefficient = identities.vanishing_friction_coefficient(0.01, 3.0)
        assert -z / (coefficient * n ** 2) == pytest.approx(1.0, rel=1e-2)

    def test_unrolled_form(self, rng):
        layout = GameLayout((3, 2))
        signals = rng.normal(size=(40, layout.size))
        state = initial_state(layout, FTXL, eta=0.03)
        for v in signals:
            state = step(state, FeedbackSignal(layout, v))
        np.testing.assert_allclose(state.y.flat, identities.undamped_unrolled(0.03, signals), atol=1e-12)

    @pytest.mark.parametrize('a', [0.3, 0.5, 1.5])
    def test_discrete_sum_identity(self, a):
        for m in range(2, 21):
            assert identities.discrete_sum_closed_form(a, m) == pytest.approx(
                identities.discrete_sum_bruteforce(a, m), abs=1e-10
            )
