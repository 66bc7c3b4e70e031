"""
ftxl_lab.learners
~~~~~~~~~~~~~~~~~

FTRL and the momentum-driven FTXL update rules.
"""

from .state import (
    LearnerState, FeedbackSignal, initial_state, equilibrium_scores,
    VARIANTS, ALGORITHM_VARIANTS, FTRL, FTXL, FTXL_VANISHING, FTXL_CONSTANT,
)
from .steps import (
    ftrl_step, ftxl_step, ftxl_vanishing_friction_step, ftxl_constant_friction_step,
    step, strategies_of, STEP_FUNCTIONS,
)
from .identities import (
    undamped_gap, undamped_unrolled, constant_friction_momentum, constant_friction_gap,
    vanishing_friction_coefficient, discrete_sum_bruteforce, discrete_sum_closed_form,
)

__all__ = [
    'LearnerState',
    'FeedbackSignal',
    'initial_state',
    'equilibrium_scores',
    'VARIANTS',
    'ALGORITHM_VARIANTS',
    'FTRL',
    'FTXL',
    'FTXL_VANISHING',
    'FTXL_CONSTANT',
    'ftrl_step',
    'ftxl_step',
    'ftxl_vanishing_friction_step',
    'ftxl_constant_friction_step',
    'step',
    'strategies_of',
    'STEP_FUNCTIONS',
    'undamped_gap',
    'undamped_unrolled',
    'constant_friction_momentum',
    'constant_friction_gap',
    'vanishing_friction_coefficient',
    'discrete_sum_bruteforce',
    'discrete_sum_closed_form',
]
