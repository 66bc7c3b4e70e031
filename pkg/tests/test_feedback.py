"""
Tests for the feedback oracles, the random streams and the signal diagnostics.
"""

import numpy as np
import pytest
from scipy.stats import chisquare

from ftxl_lab.errors import InvalidConfigurationError
from ftxl_lab.feedback import (
    FeedbackConfig, FeedbackOracle, bandit_signal, decompose_signal, exploration_rate, expected_signal,
    importance_weighted, lipschitz_estimate, perturb, realization_signal, sample_profile,
    trial_generator,
)
from ftxl_lab.games.normal_form import NormalFormGame
from ftxl_lab.games.profiles import GameLayout, MixedProfile


def random_profile(layout, rng):
    return MixedProfile(layout, np.concatenate([rng.dirichlet(np.ones(a)) for a in layout.action_counts]))


class TestSampling:

    def test_categorical_frequencies(self):
        layout = GameLayout((3,))
        x = MixedProfile(layout, [0.2, 0.5, 0.3])
        rng = trial_generator(7, 0)
        counts = np.bincount([sample_profile(x, rng)[0] for _ in range(20000)], minlength=3)
        assert chisquare(counts, 20000 * x.flat).pvalue > 1e-4

    def test_uniform_counts(self):
        layout = GameLayout((3,))
        x = MixedProfile.uniform(layout)
        rng = trial_generator(0, 0)
        counts = np.bincount([sample_profile(x, rng)[0] for _ in range(30000)], minlength=3)
        assert np.all((counts >= 9500) & (counts <= 10500))

    def test_point_mass_is_deterministic(self):
        layout = GameLayout((3, 2, 4))
        x = MixedProfile.point_mass(layout, (2, 0, 3))
        rng = trial_generator(1, 0)
        assert all(sample_profile(x, rng) == (2, 0, 3) for _ in range(100))

    def test_streams_are_reproducible_and_distinct(self):
        a = trial_generator(42, 3).random(5)
        b = trial_generator(42, 3).random(5)
        c = trial_generator(42, 4).random(5)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)


class TestConfig:

    def test_exploration_schedule(self):
        cfg = FeedbackConfig(model='bandit', epsilon=1.0, kappa=0.25)
        assert exploration_rate(1, cfg) == 1.0
        assert exploration_rate(16, cfg) == pytest.approx(0.5)

    @pytest.mark.parametrize('kwargs', [
        {'model': 'psychic'},
        {'epsilon': 0.0},
        {'epsilon': 1.5},
        {'kappa': 0.5},
        {'seed': -1},
    ])
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(InvalidConfigurationError):
            FeedbackConfig(**kwargs)


class TestSignals:

    def test_importance_weighted_example(self):
        game = NormalFormGame([[3.0, 1.0]])
        perturbed = MixedProfile(game.layout, [0.5, 0.5])
        np.testing.assert_allclose(importance_weighted(game, perturbed, (0,)), [6.0, 0.0])

    def test_perturb_keeps_simplex(self, zero_sum, rng):
        x = perturb(random_profile(zero_sum.layout, rng), 0.1)
        x.validate()
        assert np.all(x.flat >= 0.1 / 3 - 1e-15)

    def test_full_oracle_is_exact(self, zero_sum, rng):
        x = random_profile(zero_sum.layout, rng)
        outcome = FeedbackOracle(zero_sum, FeedbackConfig())(x, 1, rng)
        np.testing.assert_array_equal(outcome.signal.flat, zero_sum.payoff_field(x))
        assert outcome.profile is None

    def test_realization_is_unbiased(self, zero_sum, rng):
        for _ in range(50):
            x = random_profile(zero_sum.layout, rng)
            np.testing.assert_allclose(
                expected_signal(zero_sum, x, 'realization'), zero_sum.payoff_field(x), atol=1e-12
            )

    def test_bandit_mean_is_field_at_explored_profile(self, zero_sum, rng):
        cfg = FeedbackConfig(model='bandit', epsilon=0.1)
        for _ in range(50):
            x = random_profile(zero_sum.layout, rng)
            np.testing.assert_allclose(
                expected_signal(zero_sum, x, 'bandit', n=3, cfg=cfg),
                zero_sum.payoff_field(perturb(x, 0.1)),
                atol=1e-12,
            )

    def test_realization_noise_is_bounded(self, zero_sum, rng):
        bound = 2 * max(abs(v) for v in zero_sum.payoff_range())
        for _ in range(100):
            x = random_profile(zero_sum.layout, rng)
            _, signal = realization_signal(zero_sum, x, rng)
            parts = decompose_signal(zero_sum, x, signal)
            assert parts.norms()['noise'] <= bound
            assert parts.norms()['bias'] <= 1e-12

    def test_bandit_bias_shrinks_with_exploration(self, zero_sum, rng):
        x = random_profile(zero_sum.layout, rng)
        oracle = FeedbackOracle(zero_sum, FeedbackConfig(model='bandit', epsilon=1.0, kappa=0.25))
        biases = []
        for n in (1, 16, 256):
            outcome = oracle(x, n, rng)
            assert outcome.exploration == pytest.approx(n ** -0.25)
            played = zero_sum.layout.flat_indices(outcome.profile)
            nonzero = np.flatnonzero(outcome.signal.flat)
            assert set(nonzero) <= set(played)
            parts = decompose_signal(zero_sum, x, outcome.signal, n=n, cfg=oracle.cfg)
            biases.append(parts.norms()['bias'])
        assert biases[0] > biases[1] > biases[2]

    def test_lipschitz_estimate(self, zero_sum, rng):
        estimate = lipschitz_estimate(zero_sum, rng, samples=100)
        # payoffs lie in [-2, 2]; a unit of l1 mass moves any payoff by at most 4/2 per opponent
        assert 0 < estimate <= 2.0 + 1e-12

    @pytest.mark.parametrize('n', [1, 10, 100, 1000])
    def test_bandit_estimate_is_bounded_by_exploration(self, zero_sum, rng, n):
        cfg = FeedbackConfig(model='bandit', epsilon=0.5, kappa=0.25)
        largest = max(abs(v) for v in zero_sum.payoff_range())
        layout = zero_sum.layout
        for _ in range(100):
            # near-pure strategies give the largest weights
            x = MixedProfile(layout, np.concatenate([rng.dirichlet(np.full(a, 0.05)) for a in layout.action_counts]))
            outcome, signal = bandit_signal(zero_sum, x, n, cfg, rng)
            for i, actions in enumerate(layout.action_counts):
                block = signal.flat[layout.block(i)]
                assert np.max(np.abs(block)) <= largest * actions / outcome.exploration + 1e-12

    def test_bandit_bias_is_bounded_by_exploration(self, zero_sum, rng):
        cfg = FeedbackConfig(model='bandit', epsilon=0.5, kappa=0.25)
        # payoff columns of the matrix span 4, so L = 4/2 for the max-player l1 norm
        lipschitz = 2.0
        assert lipschitz_estimate(zero_sum, rng, samples=500) <= lipschitz + 1e-12
        for n in (1, 10, 100, 1000):
            for _ in range(20):
                x = random_profile(zero_sum.layout, rng)
                outcome, signal = bandit_signal(zero_sum, x, n, cfg, rng)
                shift = outcome.perturbed.distance_l1(x)
                assert shift <= 2 * outcome.exploration + 1e-15
                bias = decompose_signal(zero_sum, x, signal, n=n, cfg=cfg).norms()['bias']
                assert bias <= lipschitz * shift + 1e-12
                assert bias <= 2 * lipschitz * outcome.exploration + 1e-12
