"""
ftxl-lab
~~~~~~~~

Accelerated (momentum-driven) regularized learning in finite games:
FTRL and FTXL learners, full-information / realization / bandit feedback,
continuous-time dynamics and a reproducible multi-trial harness.

Basic usage:

    from ftxl_lab import preset, run_trials, aggregate

    cfg = preset('zerosum', feedback='realization', trials=10)
    records = run_trials(cfg)
    print(aggregate(records).frac_converged)

As a headless Flask service:

    from flask import Flask
    from ftxl_lab import SimulationSvc

    app = Flask(__name__)
    SimulationSvc(app)

:license: MIT, see LICENSE for more details.
"""

from .__version__ import __version__

from .errors import (
    FTXLError,
    InvalidProfileError,
    InvalidGameError,
    ShapeMismatchError,
    NotStrictEquilibriumError,
    NumericalFailureError,
    DomainError,
    InvalidConfigurationError,
    DivergenceError,
    FitRefusedError,
    UnknownPresetError,
)
from .games import (
    Game, NormalFormGame, CongestionGame, MixedProfile, ScoreVector, StrictEquilibrium,
    drift_constant, is_strict_nash, load_game,
)
from .regularizers import Regularizer, entropic, tsallis, parse_regularizer, mirror_map, logit_map, choice_map
from .learners import LearnerState, FeedbackSignal, initial_state, step, strategies_of
from .feedback import FeedbackConfig, FeedbackOracle
from .dynamics import ContinuousState, IntegratorConfig, integrate, rate_envelope
from .harness import (
    ExperimentConfig, TrialRecord, run_trial, run_trials, aggregate, fit_discrete_rate, preset, sweep,
)
from .extensibility import hook, event, HookManager, EventManager
from .core import SimulationSvc

__all__ = [
    '__version__',
    'FTXLError',
    'InvalidProfileError',
    'InvalidGameError',
    'ShapeMismatchError',
    'NotStrictEquilibriumError',
    'NumericalFailureError',
    'DomainError',
    'InvalidConfigurationError',
    'DivergenceError',
    'FitRefusedError',
    'UnknownPresetError',
    'Game',
    'NormalFormGame',
    'CongestionGame',
    'MixedProfile',
    'ScoreVector',
    'StrictEquilibrium',
    'drift_constant',
    'is_strict_nash',
    'load_game',
    'Regularizer',
    'entropic',
    'tsallis',
    'parse_regularizer',
    'mirror_map',
    'logit_map',
    'choice_map',
    'LearnerState',
    'FeedbackSignal',
    'initial_state',
    'step',
    'strategies_of',
    'FeedbackConfig',
    'FeedbackOracle',
    'ContinuousState',
    'IntegratorConfig',
    'integrate',
    'rate_envelope',
    'ExperimentConfig',
    'TrialRecord',
    'run_trial',
    'run_trials',
    'aggregate',
    'fit_discrete_rate',
    'preset',
    'sweep',
    'hook',
    'event',
    'HookManager',
    'EventManager',
    'SimulationSvc',
]
