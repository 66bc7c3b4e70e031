"""
ftxl_lab.games.library
~~~~~~~~~~~~~~~~~~~~~~

Games used by the experiment presets and the closed-form checks.
"""

from ftxl_lab.games.congestion import CongestionGame
from ftxl_lab.games.normal_form import NormalFormGame

# Rows: player A (α1..α3); columns: player B (β1..β3); B receives -A.
ZERO_SUM_MATRIX = (
    (2.0, 1.0, 2.0),
    (-2.0, -1.0, -2.0),
    (-2.0, -1.0, -2.0),
)
ZERO_SUM_EQUILIBRIUM = (0, 1)

SINGLE_PLAYER_EQUILIBRIUM = (0,)


def zero_sum_game() -> NormalFormGame:
    """Two-player 3×3 zero-sum game with strict equilibrium (α1, β2)."""
    a = [list(row) for row in ZERO_SUM_MATRIX]
    b = [[-v for v in row] for row in ZERO_SUM_MATRIX]
    return NormalFormGame.from_bimatrix(a, b, name='zerosum')


def single_player_game(gap: float = 1.0, base: float = 0.0) -> NormalFormGame:
    """One player, actions A and B with u(A) - u(B) = gap."""
    return NormalFormGame([[base + gap, base]], name='single')


def congestion_game(num_players: int = 100, cost_fixed: float = 1.1, cost_slope: float = 1.0) -> CongestionGame:
    """Two roads: fixed delay `cost_fixed` and delay `cost_slope` · d / N; all-on-shared is strict."""
    return CongestionGame(num_players=num_players, cost_fixed=cost_fixed, cost_slope=cost_slope)


def congestion_equilibrium(num_players: int = 100) -> tuple:
    return (1,) * num_players
