"""
ftxl_lab.learners.state
~~~~~~~~~~~~~~~~~~~~~~~

Learner state (scores, momentum, counter) and the payoff signals that drive it.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from ftxl_lab.errors import InvalidConfigurationError, ShapeMismatchError
from ftxl_lab.games.profiles import GameLayout, PlayerVectors, ScoreVector

logger = logging.getLogger(__name__)

FTRL = 'ftrl'
FTXL = 'ftxl'
FTXL_VANISHING = 'ftxl_vanishing'
FTXL_CONSTANT = 'ftxl_constant'

VARIANTS = (FTRL, FTXL, FTXL_VANISHING, FTXL_CONSTANT)

# CLI spelling -> variant
ALGORITHM_VARIANTS = {
    'ew': FTRL,
    'ftrl': FTRL,
    'ftxl': FTXL,
    'ftxl-vf': FTXL_VANISHING,
    'ftxl-cf': FTXL_CONSTANT,
}

FEEDBACK_MODELS = ('full', 'realization', 'bandit')


class FeedbackSignal(PlayerVectors):
    """Payoff signal v̂ delivered to every player in one round."""

    def __init__(self, layout: GameLayout, flat, model: str = 'full'):
        super().__init__(layout, flat)
        if model not in FEEDBACK_MODELS:
            raise InvalidConfigurationError(f"Unknown feedback model: {model}")
        self.model = model


@dataclass(frozen=True)
class LearnerState:
    """
    Scores y, momentum p and step counter n of all players.

    Attributes:
        y: Score vector
        p: Momentum, same layout as y (unused by FTRL)
        n: Step counter, starting at 1
        eta: Step size η
        friction: Friction coefficient r
        variant: One of VARIANTS
    """

    y: ScoreVector
    p: ScoreVector
    n: int = 1
    eta: float = 0.01
    friction: float = 0.0
    variant: str = FTXL

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidConfigurationError(f"Unknown learner variant: {self.variant}")
        if not self.eta > 0:
            raise InvalidConfigurationError(f"Step size must be positive, got {self.eta}")
        if self.friction < 0:
            raise InvalidConfigurationError(f"Friction must be nonnegative, got {self.friction}")
        if self.n < 1:
            raise InvalidConfigurationError(f"Step counter starts at 1, got {self.n}")
        if self.y.layout != self.p.layout:
            raise ShapeMismatchError(self.y.layout.action_counts, self.p.layout.action_counts)
        if self.variant in (FTXL_VANISHING, FTXL_CONSTANT) and self.eta * self.friction >= 1.0:
            raise InvalidConfigurationError(
                f"{self.variant} needs η·r < 1, got η={self.eta}, r={self.friction}"
            )

    @property
    def layout(self) -> GameLayout:
        return self.y.layout

    def is_finite(self) -> bool:
        return self.y.is_finite() and self.p.is_finite()

    def advance(self, y_flat: np.ndarray, p_flat: Optional[np.ndarray] = None) -> 'LearnerState':
        """Next state with new scores (and momentum), counter incremented."""
        p = self.p if p_flat is None else ScoreVector(self.layout, p_flat)
        return replace(self, y=ScoreVector(self.layout, y_flat), p=p, n=self.n + 1)


def equilibrium_scores(layout: GameLayout, equilibrium: Sequence[int], gap: float) -> np.ndarray:
    """Scores where every off-equilibrium action trails the equilibrium action by `gap`."""
    profile = layout.validate_profile(equilibrium)
    flat = np.full(layout.size, -float(gap))
    flat[layout.flat_indices(profile)] = 0.0
    return flat


def initial_state(layout: GameLayout, variant: str = FTXL, eta: float = 0.01, friction: float = 0.0,
                  init: str = 'zero', equilibrium: Optional[Sequence[int]] = None,
                  gap: Optional[float] = None, bound: float = 1.0,
                  scores=None, rng: Optional[np.random.Generator] = None) -> LearnerState:
    """
    Build the first learner state with zero momentum.

    Args:
        layout: Game layout
        variant: Learner variant
        eta: Step size
        friction: Friction coefficient
        init: 'zero', 'near' (trail by `gap` behind `equilibrium`), 'random'
            (uniform in [-bound, bound]) or 'given' (use `scores`)
        equilibrium: Target profile for 'near'
        gap: Score lead of the equilibrium actions for 'near'
        bound: Half-width of the box for 'random'
        scores: Flat initial scores for 'given'
        rng: Generator for 'random'

    Returns:
        LearnerState: state at n = 1
    """
    if init == 'zero':
        y = np.zeros(layout.size)
    elif init == 'near':
        if equilibrium is None or gap is None:
            raise InvalidConfigurationError("'near' initialization needs an equilibrium and a gap")
        y = equilibrium_scores(layout, equilibrium, gap)
    elif init == 'random':
        if rng is None:
            raise InvalidConfigurationError("'random' initialization needs a generator")
        y = rng.uniform(-bound, bound, size=layout.size)
    elif init == 'given':
        y = np.array(scores, dtype=float)
    else:
        raise InvalidConfigurationError(f"Unknown initialization: {init}")

    return LearnerState(
        y=ScoreVector(layout, y),
        p=ScoreVector.zeros(layout),
        n=1,
        eta=float(eta),
        friction=float(friction),
        variant=variant,
    )
