"""
ftxl_lab.feedback
~~~~~~~~~~~~~~~~~

Feedback oracles, exact signal diagnostics and per-trial random streams.
"""

from .oracles import (
    FeedbackConfig, FeedbackOracle, RoundOutcome, FULL, REALIZATION, BANDIT,
    exploration_rate, perturb, sample_profile, full_signal, realization_signal,
    bandit_signal, importance_weighted,
)
from .diagnostics import (
    SignalDecomposition, enumerate_profiles, expected_signal, decompose_signal, lipschitz_estimate,
)
from .rng import trial_generator, trial_seed_sequence

__all__ = [
    'FeedbackConfig',
    'FeedbackOracle',
    'RoundOutcome',
    'FULL',
    'REALIZATION',
    'BANDIT',
    'exploration_rate',
    'perturb',
    'sample_profile',
    'full_signal',
    'realization_signal',
    'bandit_signal',
    'importance_weighted',
    'SignalDecomposition',
    'enumerate_profiles',
    'expected_signal',
    'decompose_signal',
    'lipschitz_estimate',
    'trial_generator',
    'trial_seed_sequence',
]
