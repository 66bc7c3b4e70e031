"""
ftxl_lab.feedback.oracles
~~~~~~~~~~~~~~~~~~~~~~~~~

Payoff feedback models: full information, realization-based (counterfactual
payoffs against one sampled profile) and bandit (importance-weighted estimates
of a single realized payoff, with explicit exploration).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ftxl_lab.errors import InvalidConfigurationError
from ftxl_lab.games.base import Game
from ftxl_lab.games.profiles import MixedProfile
from ftxl_lab.learners.state import FeedbackSignal, FEEDBACK_MODELS

logger = logging.getLogger(__name__)

FULL = 'full'
REALIZATION = 'realization'
BANDIT = 'bandit'


@dataclass(frozen=True)
class FeedbackConfig:
    """
    Feedback model and its exploration schedule ε_n = ε · n^(-κ).

    Attributes:
        model: 'full', 'realization' or 'bandit'
        epsilon: Exploration base ε in (0, 1]
        kappa: Exploration exponent κ in [0, 1/2)
        seed: Master seed of the trial streams
    """

    model: str = FULL
    epsilon: float = 0.1
    kappa: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.model not in FEEDBACK_MODELS:
            raise InvalidConfigurationError(f"Unknown feedback model: {self.model}")
        if not 0.0 < self.epsilon <= 1.0:
            raise InvalidConfigurationError(f"Exploration base must lie in (0, 1], got {self.epsilon}")
        if not 0.0 <= self.kappa < 0.5:
            raise InvalidConfigurationError(f"Exploration exponent must lie in [0, 1/2), got {self.kappa}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InvalidConfigurationError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass
class RoundOutcome:
    """What happened in one round: the sampled profile and what each player saw."""

    signal: FeedbackSignal
    profile: Optional[Tuple[int, ...]] = None
    realized: Optional[np.ndarray] = None
    perturbed: Optional[MixedProfile] = None
    exploration: float = 0.0


def exploration_rate(n: int, cfg: FeedbackConfig) -> float:
    """ε_n = ε · n^(-κ)."""
    return cfg.epsilon * float(n) ** (-cfg.kappa)


def perturb(x: MixedProfile, epsilon: float) -> MixedProfile:
    """x̂_i = (1 - ε) x_i + ε · uniform_i."""
    counts = np.asarray(x.layout.action_counts, dtype=float)
    uniform = np.repeat(1.0 / counts, x.layout.action_counts)
    return MixedProfile(x.layout, (1.0 - epsilon) * x.flat + epsilon * uniform, validate=False)


def sample_profile(x: MixedProfile, rng: np.random.Generator) -> Tuple[int, ...]:
    """
    One independent categorical draw per player by inverse CDF.

    The drawn action is the first whose cumulative probability exceeds a
    uniform variate, in the stored action order.
    """
    layout = x.layout
    u = rng.random(layout.num_players)
    matrix = layout.as_matrix(x.flat)
    if matrix is not None:
        cum = np.cumsum(matrix, axis=1)
        actions = np.minimum((cum <= u[:, None]).sum(axis=1), layout.action_counts[0] - 1)
        return tuple(int(a) for a in actions)
    return tuple(
        int(min(np.searchsorted(np.cumsum(v), ui, side='right'), v.size - 1))
        for v, ui in zip(x.vectors(), u)
    )


def full_signal(game: Game, x: MixedProfile) -> FeedbackSignal:
    """v̂_i = v_i(x) for every player."""
    return FeedbackSignal(game.layout, game.payoff_field(x), model=FULL)


def realization_signal(game: Game, x: MixedProfile, rng: np.random.Generator) -> Tuple[RoundOutcome, FeedbackSignal]:
    """Counterfactual payoff vectors against one profile α ~ x shared by all players."""
    profile = sample_profile(x, rng)
    signal = FeedbackSignal(game.layout, game.pure_payoff_field(profile), model=REALIZATION)
    outcome = RoundOutcome(signal=signal, profile=profile, realized=game.pure_payoff(profile))
    return outcome, signal


def importance_weighted(game: Game, perturbed: MixedProfile, profile, realized=None) -> np.ndarray:
    """
    Flat importance-weighted estimate: u_i(α) / x̂_{iα_i} at the played action, zero elsewhere.
    """
    layout = game.layout
    if realized is None:
        realized = game.pure_payoff(profile)
    played = layout.flat_indices(profile)
    flat = np.zeros(layout.size)
    flat[played] = realized / perturbed.flat[played]
    return flat


def bandit_signal(game: Game, x: MixedProfile, n: int, cfg: FeedbackConfig,
                  rng: np.random.Generator) -> Tuple[RoundOutcome, FeedbackSignal]:
    """Sample from the explored profile x̂_n and reconstruct payoffs by importance weighting."""
    if n < 1:
        raise InvalidConfigurationError(f"Step counter starts at 1, got {n}")
    epsilon = exploration_rate(n, cfg)
    perturbed = perturb(x, epsilon)
    profile = sample_profile(perturbed, rng)
    realized = game.pure_payoff(profile)
    signal = FeedbackSignal(game.layout, importance_weighted(game, perturbed, profile, realized), model=BANDIT)
    outcome = RoundOutcome(
        signal=signal,
        profile=profile,
        realized=realized,
        perturbed=perturbed,
        exploration=epsilon,
    )
    return outcome, signal


class FeedbackOracle:
    """
    Binds a game to a feedback configuration.

    Called once per round with the current strategies, the step counter and
    the trial's generator; returns the round outcome. Tests substitute their
    own callable with the same signature.
    """

    def __init__(self, game: Game, cfg: FeedbackConfig):
        self.game = game
        self.cfg = cfg

    def __call__(self, x: MixedProfile, n: int, rng: np.random.Generator) -> RoundOutcome:
        model = self.cfg.model
        if model == FULL:
            return RoundOutcome(signal=full_signal(self.game, x))
        if model == REALIZATION:
            outcome, _ = realization_signal(self.game, x, rng)
            return outcome
        outcome, _ = bandit_signal(self.game, x, n, self.cfg, rng)
        return outcome

    def __repr__(self):
        return f"FeedbackOracle(game={self.game.name!r}, model={self.cfg.model!r})"
