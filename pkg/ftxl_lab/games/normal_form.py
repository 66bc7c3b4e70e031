"""
ftxl_lab.games.normal_form
~~~~~~~~~~~~~~~~~~~~~~~~~~

Games stored as a dense payoff tensor of shape (players, |A_1|, ..., |A_N|),
serialized row-major.
"""

import logging
from functools import reduce
from typing import Sequence, Tuple

import numpy as np

from ftxl_lab.errors import InvalidGameError
from ftxl_lab.games.base import Game
from ftxl_lab.games.profiles import MixedProfile

logger = logging.getLogger(__name__)


class NormalFormGame(Game):
    """Finite game with an explicit payoff tensor."""

    name = 'normal_form'

    def __init__(self, payoffs, name: str = None):
        tensor = np.array(payoffs, dtype=float)
        if tensor.ndim < 2:
            raise InvalidGameError("Payoff tensor needs a player axis and one axis per player")
        if tensor.shape[0] != tensor.ndim - 1:
            raise InvalidGameError(
                f"Payoff tensor of shape {tensor.shape} does not have one action axis per player"
            )
        if not np.all(np.isfinite(tensor)):
            raise InvalidGameError("Payoffs must be finite")
        super().__init__(tensor.shape[1:])
        tensor.setflags(write=False)
        self.payoffs = tensor
        if name:
            self.name = name

    @classmethod
    def from_flat(cls, num_players: int, action_counts: Sequence[int], payoffs: Sequence[float], name: str = None):
        """Build from the row-major (player, α_1, ..., α_N) serialization."""
        counts = tuple(int(a) for a in action_counts)
        if len(counts) != num_players:
            raise InvalidGameError(f"{num_players} players but {len(counts)} action counts")
        flat = np.asarray(payoffs, dtype=float).ravel()
        expected = num_players * int(np.prod(counts))
        if flat.size != expected:
            raise InvalidGameError(f"Expected {expected} payoff entries, got {flat.size}")
        return cls(flat.reshape((num_players,) + counts), name=name)

    @classmethod
    def from_bimatrix(cls, row_payoffs, column_payoffs, name: str = None):
        a = np.asarray(row_payoffs, dtype=float)
        b = np.asarray(column_payoffs, dtype=float)
        if a.shape != b.shape or a.ndim != 2:
            raise InvalidGameError(f"Bimatrix shapes differ: {a.shape} vs {b.shape}")
        return cls(np.stack([a, b]), name=name)

    def to_flat(self) -> list:
        return self.payoffs.ravel().tolist()

    def _pure_payoff(self, profile: Tuple[int, ...]) -> np.ndarray:
        return self.payoffs[(slice(None),) + profile].copy()

    def _contract_opponents(self, player: int, vectors) -> np.ndarray:
        tensor = self.payoffs[player]
        # contract from the last axis so earlier axis numbers stay valid
        for j in reversed(range(self.num_players)):
            if j == player:
                continue
            tensor = np.tensordot(tensor, vectors[j], axes=([j], [0]))
        return tensor

    def _payoff_field(self, x: MixedProfile) -> np.ndarray:
        vectors = x.vectors()
        return np.concatenate([
            self._contract_opponents(i, vectors) for i in range(self.num_players)
        ])

    def mixed_payoff(self, x: MixedProfile) -> np.ndarray:
        """Expected payoff by summing over every pure profile with its joint probability."""
        vectors = self.check_mixed(x).vectors()
        joint = reduce(np.multiply.outer, vectors)
        axes = tuple(range(1, self.num_players + 1))
        return np.sum(self.payoffs * joint, axis=axes)

    def _pure_payoff_field(self, profile: Tuple[int, ...]) -> np.ndarray:
        rows = []
        for i in range(self.num_players):
            index = list(profile)
            index[i] = slice(None)
            rows.append(self.payoffs[i][tuple(index)])
        return np.concatenate(rows)

    def payoff_range(self) -> Tuple[float, float]:
        return float(self.payoffs.min()), float(self.payoffs.max())

    def describe(self) -> dict:
        info = super().describe()
        info['payoffs'] = self.to_flat()
        return info
