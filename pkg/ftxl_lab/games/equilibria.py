"""
ftxl_lab.games.equilibria
~~~~~~~~~~~~~~~~~~~~~~~~~

Strict Nash equilibria, the drift constant c and the score-dominance
threshold M beyond which the equilibrium actions keep a payoff lead of c.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ftxl_lab.errors import InvalidConfigurationError, NotStrictEquilibriumError
from ftxl_lab.games.base import Game
from ftxl_lab.games.profiles import MixedProfile

logger = logging.getLogger(__name__)

MAX_VERTEX_PROFILES = 4096
MAX_DOUBLINGS = 30


@dataclass(frozen=True)
class StrictEquilibrium:
    """A strict Nash equilibrium with its drift constant c and threshold M."""

    profile: Tuple[int, ...]
    drift: float
    threshold: float

    def __post_init__(self):
        if not self.drift > 0:
            raise InvalidConfigurationError(f"Drift constant must be positive, got {self.drift}")
        if not self.threshold > 0:
            raise InvalidConfigurationError(f"Threshold must be positive, got {self.threshold}")

    def target(self, game: Game) -> MixedProfile:
        return MixedProfile.point_mass(game.layout, self.profile)

    def to_dict(self) -> dict:
        return {'profile': list(self.profile), 'drift': self.drift, 'threshold': self.threshold}


def deviation_gaps(game: Game, profile: Sequence[int]) -> List[np.ndarray]:
    """u_i(α*) - u_i(α_i; α*_{-i}) for every player and every deviation α_i ≠ α*_i."""
    profile = game.layout.validate_profile(profile)
    field = game.pure_payoff_field(profile)
    gaps = []
    for i, star in enumerate(profile):
        v = field[game.layout.block(i)]
        gaps.append(np.delete(v[star] - v, star))
    return gaps


def _min_gap(gaps: List[np.ndarray]) -> float:
    values = [float(g.min()) for g in gaps if g.size]
    return min(values) if values else math.inf


def is_strict_nash(game: Game, profile: Sequence[int]) -> bool:
    """True iff every unilateral deviation strictly lowers the deviator's payoff."""
    return _min_gap(deviation_gaps(game, profile)) > 0


def drift_constant(game: Game, profile: Sequence[int], reg=None,
                   threshold: Optional[float] = None) -> StrictEquilibrium:
    """
    Drift constant c = ½ · min gap, together with the threshold M.

    Raises:
        NotStrictEquilibriumError: if some deviation gap is not positive.
    """
    profile = game.layout.validate_profile(profile)
    min_gap = _min_gap(deviation_gaps(game, profile))
    if not min_gap > 0:
        raise NotStrictEquilibriumError(profile, min_gap)
    if math.isinf(min_gap):
        # every player has a single action; any positive drift is vacuous
        min_gap = 1.0
    drift = 0.5 * min_gap
    if threshold is None:
        threshold = score_threshold(game, profile, drift, reg)
    return StrictEquilibrium(profile=profile, drift=drift, threshold=float(threshold))


def fallback_threshold(game: Game, drift: float) -> float:
    """Conservative logit-tail value log(|A_max| · (u_max - u_min) / c) + 1."""
    u_min, u_max = game.payoff_range()
    spread = max(u_max - u_min, drift)
    return max(math.log(max(game.action_counts) * spread / drift) + 1.0, 1.0)


def _deviation_mass(reg, count: int, gap: float) -> float:
    """Mass off the equilibrium action when every other score trails by `gap`."""
    from ftxl_lab.regularizers import ENTROPIC, logit_map, mirror_map

    if count == 1:
        return 0.0
    y = np.zeros(count)
    y[0] = gap
    reg = reg or ENTROPIC
    x = logit_map(y) if reg.kind == 'entropic' else mirror_map(reg, y)
    return float(1.0 - x[0])


def _lead_holds(game: Game, profile: Tuple[int, ...], masses: Sequence[float], drift: float) -> bool:
    """
    Check payoff leads > c on every vertex of the box of profiles whose
    deviating mass per player is at most masses[i].

    Payoffs are multilinear, so the worst case over the box sits at a vertex:
    each player either stays put or moves its whole allowance to one action.
    """
    layout = game.layout
    choices = [
        [None] + [a for a in range(count) if a != star]
        for count, star in zip(layout.action_counts, profile)
    ]
    for combo in itertools.product(*choices):
        flat = MixedProfile.point_mass(layout, profile).flat.copy()
        for i, deviation in enumerate(combo):
            if deviation is None or masses[i] == 0.0:
                continue
            offset = int(layout.offsets[i])
            flat[offset + profile[i]] -= masses[i]
            flat[offset + deviation] += masses[i]
        field = game.payoff_field(MixedProfile(layout, flat, validate=False))
        for i, star in enumerate(profile):
            v = field[layout.block(i)]
            if np.any(np.delete(v[star] - v, star) <= drift):
                return False
    return True


def score_threshold(game: Game, profile: Sequence[int], drift: float, reg=None) -> float:
    """
    Smallest g in 1, 2, 4, ... such that score leads above g keep every payoff lead above c.

    Games whose vertex lattice exceeds MAX_VERTEX_PROFILES use the logit-tail fallback.
    """
    profile = game.layout.validate_profile(profile)
    lattice_size = 1.0
    for count in game.action_counts:
        lattice_size *= count
    if lattice_size > MAX_VERTEX_PROFILES:
        logger.info(
            f"Vertex lattice of {lattice_size:.3g} profiles is too large; using logit-tail threshold"
        )
        return fallback_threshold(game, drift)

    gap = 1.0
    for _ in range(MAX_DOUBLINGS):
        masses = [_deviation_mass(reg, count, gap) for count in game.action_counts]
        if _lead_holds(game, profile, masses, drift):
            return gap
        gap *= 2.0

    logger.warning(f"Threshold search did not settle below {gap:g}; using logit-tail threshold")
    return fallback_threshold(game, drift)
