"""
ftxl_lab.harness
~~~~~~~~~~~~~~~~

Experiment presets, the multi-trial round loop, rate fits and CSV output.
"""

from .experiment import ExperimentConfig, TrialRecord, run_trial, run_trials
from .rates import RateReport, fit_discrete_rate, fit_window
from .summary import Summary, aggregate
from .presets import PRESETS, preset, build_config, parse_init, settings_options, with_option
from .export import (
    RecordedTrial, write_trials_csv, write_summary_csv, write_trajectory_csv, read_trials_csv,
)
from .sweep import sweep

__all__ = [
    'ExperimentConfig',
    'TrialRecord',
    'run_trial',
    'run_trials',
    'RateReport',
    'fit_discrete_rate',
    'fit_window',
    'Summary',
    'aggregate',
    'PRESETS',
    'preset',
    'build_config',
    'parse_init',
    'settings_options',
    'with_option',
    'RecordedTrial',
    'write_trials_csv',
    'write_summary_csv',
    'write_trajectory_csv',
    'read_trials_csv',
    'sweep',
]
