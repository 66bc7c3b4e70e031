"""
ftxl_lab.learners.steps
~~~~~~~~~~~~~~~~~~~~~~~

One-step update rules. Each is a pure function of (state, signal).

    ftrl:            y' = y + η v̂
    ftxl:            p' = p + η v̂;              y' = y + η p'
    ftxl_vanishing:  p' = p (1 - ηr/n) + η v̂;  y' = y + η p'
    ftxl_constant:   p' = p (1 - ηr) + η v̂;    y' = y + η p'
"""

import logging

from ftxl_lab.errors import InvalidConfigurationError, ShapeMismatchError
from ftxl_lab.games.profiles import MixedProfile
from ftxl_lab.learners.state import (
    FeedbackSignal, LearnerState, FTRL, FTXL, FTXL_CONSTANT, FTXL_VANISHING,
)
from ftxl_lab.regularizers import Regularizer, choice_map

logger = logging.getLogger(__name__)


def _check(state: LearnerState, signal: FeedbackSignal, variant: str):
    if state.variant != variant:
        raise InvalidConfigurationError(f"{variant} step applied to a {state.variant} state")
    if signal.layout != state.layout:
        raise ShapeMismatchError(state.layout.action_counts, signal.layout.action_counts)


def ftrl_step(state: LearnerState, signal: FeedbackSignal) -> LearnerState:
    _check(state, signal, FTRL)
    return state.advance(state.y.flat + state.eta * signal.flat)


def _momentum_step(state: LearnerState, signal: FeedbackSignal, damping: float) -> LearnerState:
    # momentum first, then scores with the new momentum
    p = state.p.flat * damping + state.eta * signal.flat
    y = state.y.flat + state.eta * p
    return state.advance(y, p)


def ftxl_step(state: LearnerState, signal: FeedbackSignal) -> LearnerState:
    _check(state, signal, FTXL)
    return _momentum_step(state, signal, 1.0)


def ftxl_vanishing_friction_step(state: LearnerState, signal: FeedbackSignal) -> LearnerState:
    _check(state, signal, FTXL_VANISHING)
    damping = 1.0 - state.eta * state.friction / state.n
    if damping <= 0.0:
        raise InvalidConfigurationError(
            f"Vanishing friction factor 1 - ηr/n = {damping:g} at n={state.n}"
        )
    return _momentum_step(state, signal, damping)


def ftxl_constant_friction_step(state: LearnerState, signal: FeedbackSignal) -> LearnerState:
    _check(state, signal, FTXL_CONSTANT)
    return _momentum_step(state, signal, 1.0 - state.eta * state.friction)


STEP_FUNCTIONS = {
    FTRL: ftrl_step,
    FTXL: ftxl_step,
    FTXL_VANISHING: ftxl_vanishing_friction_step,
    FTXL_CONSTANT: ftxl_constant_friction_step,
}


def step(state: LearnerState, signal: FeedbackSignal) -> LearnerState:
    """Apply the update rule of the state's variant."""
    return STEP_FUNCTIONS[state.variant](state, signal)


def strategies_of(state: LearnerState, reg: Regularizer) -> MixedProfile:
    """x_n = Q(y_n), per player."""
    return choice_map(reg, state.y)
