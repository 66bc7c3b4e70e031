"""
ftxl_lab.games
~~~~~~~~~~~~~~

Finite games, payoff evaluation and strict equilibria.
"""

from .profiles import GameLayout, MixedProfile, ScoreVector, PlayerVectors
from .base import (
    Game, pure_payoff, mixed_payoff, payoff_vector, payoff_field,
    pure_payoff_vector, pure_payoff_field, payoff_range,
)
from .normal_form import NormalFormGame
from .congestion import CongestionGame, opponent_load_distribution
from .equilibria import (
    StrictEquilibrium, is_strict_nash, drift_constant, deviation_gaps,
    score_threshold, fallback_threshold,
)
from .library import (
    zero_sum_game, single_player_game, congestion_game, congestion_equilibrium,
    ZERO_SUM_EQUILIBRIUM, SINGLE_PLAYER_EQUILIBRIUM,
)
from .loader import load_game, parse_game_spec

__all__ = [
    'GameLayout',
    'MixedProfile',
    'ScoreVector',
    'PlayerVectors',
    'Game',
    'NormalFormGame',
    'CongestionGame',
    'StrictEquilibrium',
    'pure_payoff',
    'mixed_payoff',
    'payoff_vector',
    'payoff_field',
    'pure_payoff_vector',
    'pure_payoff_field',
    'payoff_range',
    'opponent_load_distribution',
    'is_strict_nash',
    'drift_constant',
    'deviation_gaps',
    'score_threshold',
    'fallback_threshold',
    'zero_sum_game',
    'single_player_game',
    'congestion_game',
    'congestion_equilibrium',
    'ZERO_SUM_EQUILIBRIUM',
    'SINGLE_PLAYER_EQUILIBRIUM',
    'load_game',
    'parse_game_spec',
]
