"""
ftxl_lab.games.profiles
~~~~~~~~~~~~~~~~~~~~~~~

Action layouts and per-player vectors (mixed profiles, scores, payoff fields).

Every per-player quantity is stored as one flat float array, player blocks
concatenated in player order, so learner updates are single vector operations.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ftxl_lab.errors import InvalidProfileError, ShapeMismatchError

logger = logging.getLogger(__name__)

SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class GameLayout:
    """Action counts of every player and the flat indexing derived from them."""

    action_counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(a) for a in self.action_counts)
        if not counts:
            raise InvalidProfileError("A game needs at least one player")
        if any(a < 1 for a in counts):
            raise InvalidProfileError(f"Action counts must be positive, got {counts}")
        object.__setattr__(self, 'action_counts', counts)

    @property
    def num_players(self) -> int:
        return len(self.action_counts)

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.action_counts))).astype(np.int64)

    @property
    def size(self) -> int:
        return int(self.offsets[-1])

    @property
    def uniform(self) -> bool:
        """True when every player has the same number of actions."""
        return len(set(self.action_counts)) == 1

    def block(self, player: int) -> slice:
        return slice(int(self.offsets[player]), int(self.offsets[player + 1]))

    def split(self, flat: np.ndarray) -> List[np.ndarray]:
        return [flat[self.block(i)] for i in range(self.num_players)]

    def as_matrix(self, flat: np.ndarray) -> Optional[np.ndarray]:
        """(players, actions) view of a flat vector, or None for ragged layouts."""
        if not self.uniform:
            return None
        return flat.reshape(self.num_players, self.action_counts[0])

    def flat_indices(self, profile: Sequence[int]) -> np.ndarray:
        """Flat positions of one action per player."""
        return self.offsets[:-1] + np.asarray(profile, dtype=np.int64)

    def block_sums(self, flat: np.ndarray) -> np.ndarray:
        return np.add.reduceat(flat, self.offsets[:-1])

    def check(self, flat: np.ndarray):
        if flat.ndim != 1 or flat.shape[0] != self.size:
            raise ShapeMismatchError(self.size, flat.shape)

    def validate_profile(self, profile: Iterable[int]) -> Tuple[int, ...]:
        """Return the profile as a tuple of ints, checking every index."""
        try:
            actions = tuple(int(a) for a in profile)
        except (TypeError, ValueError):
            raise InvalidProfileError(f"Profile must be a sequence of action indices, got {profile!r}")
        if len(actions) != self.num_players:
            raise InvalidProfileError(
                f"Profile has {len(actions)} entries, game has {self.num_players} players"
            )
        for player, (action, count) in enumerate(zip(actions, self.action_counts)):
            if not 0 <= action < count:
                raise InvalidProfileError(
                    f"Action {action} out of range for player {player} ({count} actions)"
                )
        return actions


class PlayerVectors:
    """A real vector per player, stored flat against a layout."""

    def __init__(self, layout: GameLayout, flat):
        self.layout = layout
        self.flat = np.asarray(flat, dtype=float)
        layout.check(self.flat)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[float]], **kwargs):
        arrays = [np.asarray(v, dtype=float).ravel() for v in vectors]
        layout = GameLayout(tuple(len(a) for a in arrays))
        return cls(layout, np.concatenate(arrays), **kwargs)

    @classmethod
    def zeros(cls, layout: GameLayout, **kwargs):
        return cls(layout, np.zeros(layout.size), **kwargs)

    def __getitem__(self, player: int) -> np.ndarray:
        return self.flat[self.layout.block(player)]

    def __len__(self) -> int:
        return self.layout.num_players

    def __iter__(self):
        return iter(self.vectors())

    def vectors(self) -> List[np.ndarray]:
        return self.layout.split(self.flat)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.flat)))

    def __repr__(self):
        return f"{type(self).__name__}({[v.tolist() for v in self.vectors()]})"


class ScoreVector(PlayerVectors):
    """Cumulative payoff scores y, one vector per player."""


class MixedProfile(PlayerVectors):
    """One probability vector per player."""

    def __init__(self, layout: GameLayout, flat, validate: bool = True, tol: float = SIMPLEX_TOL):
        super().__init__(layout, flat)
        if validate:
            self.validate(tol)

    def validate(self, tol: float = SIMPLEX_TOL):
        if not self.is_finite():
            raise InvalidProfileError("Mixed profile has non-finite entries")
        if np.any(self.flat < 0):
            raise InvalidProfileError("Mixed profile has negative probabilities")
        sums = self.layout.block_sums(self.flat)
        bad = np.flatnonzero(np.abs(sums - 1.0) > tol)
        if bad.size:
            raise InvalidProfileError(
                f"Player {int(bad[0])} probabilities sum to {sums[bad[0]]!r}, expected 1"
            )

    @classmethod
    def uniform(cls, layout: GameLayout) -> 'MixedProfile':
        flat = np.concatenate([np.full(a, 1.0 / a) for a in layout.action_counts])
        return cls(layout, flat, validate=False)

    @classmethod
    def point_mass(cls, layout: GameLayout, profile: Sequence[int]) -> 'MixedProfile':
        actions = layout.validate_profile(profile)
        flat = np.zeros(layout.size)
        flat[layout.flat_indices(actions)] = 1.0
        return cls(layout, flat, validate=False)

    def distance_sup(self, other: 'MixedProfile') -> float:
        return float(np.max(np.abs(self.flat - other.flat)))

    def distance_l1(self, other: 'MixedProfile') -> float:
        """Largest per-player 1-norm distance (at most 2)."""
        return float(np.max(self.layout.block_sums(np.abs(self.flat - other.flat))))
