"""
ftxl_lab.games.base
~~~~~~~~~~~~~~~~~~~

Abstract finite game and the payoff operations every learner relies on.
"""

import logging
from abc import ABC, abstractmethod
from typing import Sequence, Tuple

import numpy as np

from ftxl_lab.errors import InvalidProfileError
from ftxl_lab.games.profiles import GameLayout, MixedProfile

logger = logging.getLogger(__name__)


class Game(ABC):
    """
    Finite N-person game in payoff form.

    Games are immutable after construction and safe to share across threads.
    Subclasses provide pure payoffs, the mixed payoff field and the
    counterfactual field against a realized profile.
    """

    name: str = 'game'

    def __init__(self, action_counts: Sequence[int]):
        self.layout = GameLayout(tuple(action_counts))

    @property
    def num_players(self) -> int:
        return self.layout.num_players

    @property
    def action_counts(self) -> Tuple[int, ...]:
        return self.layout.action_counts

    @property
    def num_profiles(self) -> int:
        return int(np.prod([float(a) for a in self.action_counts]))

    # -- required ---------------------------------------------------------

    @abstractmethod
    def _pure_payoff(self, profile: Tuple[int, ...]) -> np.ndarray:
        """u_i(α) for every player."""

    @abstractmethod
    def _payoff_field(self, x: MixedProfile) -> np.ndarray:
        """Flat concatenation of v_i(x) over players."""

    @abstractmethod
    def _pure_payoff_field(self, profile: Tuple[int, ...]) -> np.ndarray:
        """Flat concatenation of v_i(α_{-i}) over players."""

    @abstractmethod
    def payoff_range(self) -> Tuple[float, float]:
        """(min, max) over all payoffs."""

    # -- public, validated ------------------------------------------------

    def check_mixed(self, x: MixedProfile) -> MixedProfile:
        if x.layout != self.layout:
            raise InvalidProfileError(
                f"Mixed profile layout {x.layout.action_counts} does not match game {self.action_counts}"
            )
        return x

    def pure_payoff(self, profile: Sequence[int]) -> np.ndarray:
        return self._pure_payoff(self.layout.validate_profile(profile))

    def payoff_field(self, x: MixedProfile) -> np.ndarray:
        return self._payoff_field(self.check_mixed(x))

    def pure_payoff_field(self, profile: Sequence[int]) -> np.ndarray:
        return self._pure_payoff_field(self.layout.validate_profile(profile))

    def payoff_vector(self, player: int, x: MixedProfile) -> np.ndarray:
        self._check_player(player)
        return self.payoff_field(x)[self.layout.block(player)]

    def mixed_payoff(self, x: MixedProfile) -> np.ndarray:
        field = self.payoff_field(x)
        return self.layout.block_sums(field * x.flat)

    def pure_payoff_vector(self, player: int, opponents: Sequence[int]) -> np.ndarray:
        """Counterfactual payoffs of `player` against opponents' actions (player removed)."""
        self._check_player(player)
        opponents = list(opponents)
        if len(opponents) != self.num_players - 1:
            raise InvalidProfileError(
                f"Expected {self.num_players - 1} opponent actions, got {len(opponents)}"
            )
        profile = self.layout.validate_profile(opponents[:player] + [0] + opponents[player:])
        return self._pure_payoff_field(profile)[self.layout.block(player)]

    def _check_player(self, player: int):
        if not 0 <= player < self.num_players:
            raise InvalidProfileError(f"Player {player} out of range (game has {self.num_players})")

    def describe(self) -> dict:
        return {
            'name': self.name,
            'players': self.num_players,
            'actions': list(self.action_counts),
        }


def pure_payoff(game: Game, profile: Sequence[int]) -> np.ndarray:
    return game.pure_payoff(profile)


def mixed_payoff(game: Game, x: MixedProfile) -> np.ndarray:
    return game.mixed_payoff(x)


def payoff_vector(game: Game, player: int, x: MixedProfile) -> np.ndarray:
    return game.payoff_vector(player, x)


def payoff_field(game: Game, x: MixedProfile) -> np.ndarray:
    return game.payoff_field(x)


def pure_payoff_vector(game: Game, player: int, opponents: Sequence[int]) -> np.ndarray:
    return game.pure_payoff_vector(player, opponents)


def pure_payoff_field(game: Game, profile: Sequence[int]) -> np.ndarray:
    return game.pure_payoff_field(profile)


def payoff_range(game: Game) -> Tuple[float, float]:
    return game.payoff_range()
