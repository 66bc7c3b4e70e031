"""
ftxl_lab.feedback.diagnostics
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Exact conditional expectations of the feedback signals by enumerating every
pure profile, and the mean / noise / bias split of a realized signal.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from ftxl_lab.errors import InvalidConfigurationError
from ftxl_lab.feedback.oracles import (
    FeedbackConfig, FULL, REALIZATION, exploration_rate, importance_weighted, perturb,
)
from ftxl_lab.games.base import Game
from ftxl_lab.games.profiles import MixedProfile
from ftxl_lab.learners.state import FeedbackSignal

logger = logging.getLogger(__name__)

MAX_ENUMERATED_PROFILES = 10_000


@dataclass
class SignalDecomposition:
    """v̂ = v(x) + bias + noise, with noise = v̂ - E[v̂] and bias = E[v̂] - v(x)."""

    mean: np.ndarray
    noise: np.ndarray
    bias: np.ndarray

    def norms(self) -> dict:
        return {
            'noise': float(np.max(np.abs(self.noise))),
            'bias': float(np.max(np.abs(self.bias))),
        }


def enumerate_profiles(x: MixedProfile) -> Iterator[Tuple[Tuple[int, ...], float]]:
    """Yield every pure profile with its probability under x."""
    layout = x.layout
    total = 1
    for count in layout.action_counts:
        total *= count
    if total > MAX_ENUMERATED_PROFILES:
        raise InvalidConfigurationError(
            f"{total} pure profiles exceed the enumeration limit of {MAX_ENUMERATED_PROFILES}"
        )
    for profile in itertools.product(*(range(a) for a in layout.action_counts)):
        yield profile, float(np.prod(x.flat[layout.flat_indices(profile)]))


def expected_signal(game: Game, x: MixedProfile, model: str, n: int = 1, cfg: FeedbackConfig = None) -> np.ndarray:
    """
    E[v̂ | x_n = x] as a flat vector.

    Args:
        game: Game (at most MAX_ENUMERATED_PROFILES pure profiles for sampled models)
        x: Current strategies
        model: Feedback model
        n: Step counter (sets ε_n for the bandit model)
        cfg: Feedback configuration for the bandit model
    """
    if model == FULL:
        return game.payoff_field(x)
    mean = np.zeros(game.layout.size)
    if model == REALIZATION:
        for profile, prob in enumerate_profiles(x):
            if prob > 0.0:
                mean += prob * game.pure_payoff_field(profile)
        return mean
    cfg = cfg or FeedbackConfig(model=model)
    perturbed = perturb(x, exploration_rate(n, cfg))
    for profile, prob in enumerate_profiles(perturbed):
        mean += prob * importance_weighted(game, perturbed, profile)
    return mean


def decompose_signal(game: Game, x: MixedProfile, signal: FeedbackSignal, n: int = 1,
                     cfg: FeedbackConfig = None) -> SignalDecomposition:
    """Split a realized signal into its conditional mean, zero-mean noise and systematic bias."""
    mean = expected_signal(game, x, signal.model, n, cfg)
    return SignalDecomposition(
        mean=mean,
        noise=signal.flat - mean,
        bias=mean - game.payoff_field(x),
    )


def lipschitz_estimate(game: Game, rng: np.random.Generator, samples: int = 200) -> float:
    """
    Sampled estimate of L in ‖v(x) - v(x')‖∞ ≤ L · max_i ‖x_i - x'_i‖₁.
    """
    layout = game.layout
    best = 0.0
    for _ in range(samples):
        a = MixedProfile(layout, _random_simplex_point(layout, rng), validate=False)
        b = MixedProfile(layout, _random_simplex_point(layout, rng), validate=False)
        spread = a.distance_l1(b)
        if spread > 0.0:
            best = max(best, float(np.max(np.abs(game.payoff_field(a) - game.payoff_field(b)))) / spread)
    return best


def _random_simplex_point(layout, rng: np.random.Generator) -> np.ndarray:
    return np.concatenate([rng.dirichlet(np.ones(a)) for a in layout.action_counts])
