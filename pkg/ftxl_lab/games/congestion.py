"""
ftxl_lab.games.congestion
~~~~~~~~~~~~~~~~~~~~~~~~~

Symmetric two-road congestion game stored implicitly.

Road 0 has a fixed delay, road 1 a delay proportional to its load d:
cost_1 = slope * d / N. Payoffs are negated costs.
"""

import logging
from typing import Tuple

import numpy as np

from ftxl_lab.errors import InvalidGameError
from ftxl_lab.games.base import Game
from ftxl_lab.games.profiles import MixedProfile

logger = logging.getLogger(__name__)

FIXED_ROAD = 0
SHARED_ROAD = 1


def opponent_load_distribution(probs: np.ndarray) -> np.ndarray:
    """
    Poisson-binomial load seen by each player.

    Args:
        probs: Probability of each player choosing the shared road

    Returns:
        np.ndarray: Row i is the distribution of the number of *other*
            players on the shared road, over loads 0..N-1.
    """
    probs = np.asarray(probs, dtype=float)
    n = probs.size
    dist = np.zeros((n, n))
    dist[:, 0] = 1.0
    for j, pj in enumerate(probs):
        shifted = np.zeros_like(dist)
        shifted[:, 1:] = dist[:, :-1]
        updated = dist * (1.0 - pj) + shifted * pj
        updated[j] = dist[j]
        dist = updated
    return dist


class CongestionGame(Game):
    """N drivers choosing between a fixed-delay road and a congestible road."""

    name = 'congestion'

    def __init__(self, num_players: int = 100, cost_fixed: float = 1.1, cost_slope: float = 1.0):
        if num_players < 1:
            raise InvalidGameError("Congestion game needs at least one player")
        if not (np.isfinite(cost_fixed) and np.isfinite(cost_slope)):
            raise InvalidGameError("Congestion costs must be finite")
        super().__init__((2,) * int(num_players))
        self.cost_fixed = float(cost_fixed)
        self.cost_slope = float(cost_slope)

    def shared_cost(self, load) -> np.ndarray:
        return self.cost_slope * np.asarray(load, dtype=float) / self.num_players

    def _pure_payoff(self, profile: Tuple[int, ...]) -> np.ndarray:
        actions = np.asarray(profile)
        load = int(actions.sum())
        return np.where(actions == SHARED_ROAD, -self.shared_cost(load), -self.cost_fixed)

    def _pure_payoff_field(self, profile: Tuple[int, ...]) -> np.ndarray:
        actions = np.asarray(profile)
        others = actions.sum() - actions
        field = np.empty((self.num_players, 2))
        field[:, FIXED_ROAD] = -self.cost_fixed
        field[:, SHARED_ROAD] = -self.shared_cost(others + 1)
        return field.ravel()

    def _payoff_field(self, x: MixedProfile) -> np.ndarray:
        probs = x.layout.as_matrix(x.flat)[:, SHARED_ROAD]
        dist = opponent_load_distribution(probs)
        loads = np.arange(self.num_players) + 1
        field = np.empty((self.num_players, 2))
        field[:, FIXED_ROAD] = -self.cost_fixed
        field[:, SHARED_ROAD] = -(dist @ self.shared_cost(loads))
        return field.ravel()

    def payoff_range(self) -> Tuple[float, float]:
        costs = (self.cost_fixed, self.shared_cost(1), self.shared_cost(self.num_players))
        return -float(max(costs)), -float(min(costs))

    def describe(self) -> dict:
        info = super().describe()
        info.update({'generator': 'congestion', 'cost_fixed': self.cost_fixed, 'cost_slope': self.cost_slope})
        return info
