"""
Tests for the experiment harness: presets, the round loop, rate fits and CSV output.
"""

import json
import logging
from dataclasses import replace

import numpy as np
import pytest

from ftxl_lab.config import DEFAULT_CONFIG
from ftxl_lab.errors import (
    FitRefusedError, InvalidConfigurationError, NotStrictEquilibriumError, NumericalFailureError, UnknownPresetError,
)
from ftxl_lab.feedback.oracles import RoundOutcome, full_signal
from ftxl_lab.harness import (
    RecordedTrial, aggregate, build_config, fit_discrete_rate, parse_init, preset, read_trials_csv,
    run_trial, run_trials, settings_options, sweep, with_option, write_summary_csv, write_trials_csv,
)
from ftxl_lab.learners.state import FTXL, FTXL_CONSTANT
from ftxl_lab.regularizers import ENTROPIC, choice_map, distance_bound


def synthetic(trial, values, converged=True):
    values = np.asarray(values, dtype=float)
    return RecordedTrial(trial=trial, dist_sup=values, dist_l1=2 * values, converged=converged)


class TestPresets:

    def test_zerosum(self):
        cfg = preset('zerosum')
        assert cfg.variant == FTXL
        assert cfg.eta == 0.01
        assert cfg.feedback.model == 'bandit'
        assert cfg.feedback.epsilon == 0.1
        assert cfg.feedback.kappa == 0.0
        assert (cfg.horizon, cfg.trials, cfg.init) == (1000, 100, 'zero')
        assert cfg.equilibrium == (0, 1)

    def test_congestion(self):
        cfg = preset('congestion')
        assert cfg.game.num_players == 100
        assert cfg.feedback.epsilon == 1.0
        assert cfg.feedback.kappa == 0.25
        assert cfg.init == 'random'
        assert cfg.init_bound == 1.0
        assert cfg.equilibrium == (1,) * 100

    def test_overrides(self):
        cfg = preset('zerosum', alg='ftxl-cf', friction=2.0, feedback='realization', seed=9, init='near:3')
        assert cfg.variant == FTXL_CONSTANT
        assert cfg.friction == 2.0
        assert cfg.feedback.model == 'realization'
        assert cfg.master_seed == 9
        assert cfg.start_gap() == 3.0

    def test_near_defaults_to_threshold_plus_margin(self):
        cfg = preset('zerosum', init='near')
        assert cfg.start_gap() == pytest.approx(2.1)

    def test_unknown(self):
        with pytest.raises(UnknownPresetError):
            preset('prisoners')

    def test_parse_init(self):
        assert parse_init('zero') == {'init': 'zero'}
        assert parse_init('random:2') == {'init': 'random', 'init_bound': 2.0}
        with pytest.raises(InvalidConfigurationError):
            parse_init('near:lots')

    def test_bad_algorithm(self, zero_sum):
        with pytest.raises(InvalidConfigurationError):
            build_config(zero_sum, (0, 1), alg='sgd')

    def test_with_option(self):
        cfg = preset('zerosum')
        assert with_option(cfg, 'eta', 0.02).eta == 0.02
        assert with_option(cfg, 'eps', 0.2).feedback.epsilon == 0.2
        with pytest.raises(InvalidConfigurationError):
            with_option(cfg, 'regularizer', 1)

    def test_config_serializes(self):
        json.dumps(preset('congestion').to_dict())

    def test_settings_reach_the_config(self):
        settings = dict(
            DEFAULT_CONFIG, FTXL_ETA=0.05, FTXL_FRICTION=0.5, FTXL_INIT_MARGIN=0.3, FTXL_DIVERGENCE_GUARD=5.0,
            FTXL_CONVERGENCE_TOL=1e-3, FTXL_BISECTION_TOL=1e-10, FTXL_BISECTION_MAX_ITER=50,
        )
        options = settings_options(settings, step_size=False)
        assert 'eta' not in options
        cfg = preset('zerosum', init='near', **options)
        assert cfg.eta == 0.01
        assert cfg.friction == 0.5
        assert cfg.start_gap() == pytest.approx(2.3)
        assert (cfg.divergence_guard, cfg.convergence_tol) == (5.0, 1e-3)
        assert (cfg.bisection_tol, cfg.bisection_max_iter) == (1e-10, 50)
        assert settings_options(settings)['eta'] == 0.05


class TestRoundLoop:

    def test_feedback_only_sees_current_strategies(self, hooks, events):
        cfg = preset('zerosum', feedback='full', horizon=30, trials=1)
        seen, after = [], []

        def spy(x, n, rng):
            seen.append((n, x.flat.copy()))
            return RoundOutcome(signal=full_signal(cfg.game, x))

        @hooks.register('after_step')
        def record(trial, n, state, **kwargs):
            after.append(choice_map(ENTROPIC, state.y).flat.copy())

        run_trial(cfg, 0, hooks=hooks, oracle=spy, events=events)
        assert [n for n, _ in seen] == list(range(1, 30))
        np.testing.assert_allclose(seen[0][1], np.full(6, 1 / 3))
        for (_, x), previous in zip(seen[1:], after[:-1]):
            np.testing.assert_array_equal(x, previous)

    def test_distance_stays_below_bound(self, hooks, events):
        cfg = preset('zerosum', feedback='full', init='near', horizon=300, trials=1)
        target = cfg.strict_equilibrium.target(cfg.game)
        violations, checked = [], []

        @hooks.register('after_step')
        def check(trial, n, state, **kwargs):
            bounds = distance_bound(ENTROPIC, state.y, cfg.equilibrium)
            x = choice_map(ENTROPIC, state.y)
            for i in range(cfg.game.num_players):
                distance = np.max(np.abs(x[i] - target[i]))
                if distance > bounds[i] + 1e-15:
                    violations.append((n, i, distance, bounds[i]))
            checked.append(n)

        run_trial(cfg, 0, hooks=hooks, events=events)
        assert len(checked) == 299
        assert violations == []

    def test_record_shape(self, events):
        cfg = preset('zerosum', feedback='realization', horizon=50, trials=1)
        record = run_trial(cfg, 0, events=events)
        assert len(record) == 50
        assert record.dist_sup[0] == pytest.approx(2 / 3)
        assert np.all(record.dist_l1 >= record.dist_sup - 1e-15)
        assert record.strategies().layout == cfg.game.layout

    def test_divergence_guard(self, events):
        cfg = replace(preset('single', horizon=500), divergence_guard=1.0)
        record = run_trial(cfg, 0, events=events)
        assert record.diverged
        assert not record.converged
        assert len(record) == 500
        assert record.dist_sup[-1] == record.dist_sup[record.diverged_at - 1]
        assert len(events.get_history('trial.diverged')) == 1

    def test_kkt_limits_reach_the_choice_map(self, events):
        cfg = preset('single', reg='tsallis', bisection_max_iter=1, horizon=5)
        with pytest.raises(NumericalFailureError):
            run_trial(cfg, 0, events=events)
        assert len(run_trial(replace(cfg, bisection_max_iter=200), 0, events=events)) == 5

    def test_rejects_non_strict_target(self, zero_sum):
        cfg = build_config(zero_sum, (1, 0), trials=1, horizon=10)
        with pytest.raises(NotStrictEquilibriumError):
            run_trials(cfg)

    def test_events_published(self, events):
        cfg = preset('zerosum', horizon=20, trials=3)
        run_trials(cfg, events=events)
        assert len(events.get_history('trial.completed')) == 3
        batch = events.get_history('batch.completed')
        assert len(batch) == 1
        assert batch[0].data['trials'] == 3


class TestReproducibility:

    def test_byte_identical_csv(self, tmp_path, events):
        cfg = preset('zerosum', horizon=300, trials=6)
        paths = []
        for label, workers in (('a', 1), ('b', 1), ('c', 3)):
            records = run_trials(cfg, workers=workers, events=events)
            paths.append(write_trials_csv(records, tmp_path / f'{label}.csv'))
        contents = [p.read_bytes() for p in paths]
        assert contents[0] == contents[1] == contents[2]

    def test_seed_changes_streams(self, events):
        first = run_trial(preset('zerosum', horizon=200), 0, events=events)
        second = run_trial(preset('zerosum', horizon=200, seed=1), 0, events=events)
        assert not np.array_equal(first.dist_sup, second.dist_sup)

    def test_trials_are_independent(self, events):
        cfg = preset('zerosum', horizon=200)
        a, b = run_trial(cfg, 0, events=events), run_trial(cfg, 1, events=events)
        assert not np.array_equal(a.dist_sup, b.dist_sup)


class TestSummary:

    def test_aggregate(self):
        summary = aggregate([synthetic(0, [0.5, 0.0]), synthetic(1, [0.0, 0.25], converged=False)])
        np.testing.assert_allclose(summary.mean_l1, [0.5, 0.25])
        np.testing.assert_allclose(summary.std_l1, [0.5, 0.25])
        assert summary.frac_converged == 0.5
        assert summary.final_mean_l1 == 0.25

    def test_aggregate_rejects_mixed_horizons(self):
        with pytest.raises(InvalidConfigurationError):
            aggregate([synthetic(0, [1.0]), synthetic(1, [1.0, 0.5])])
        with pytest.raises(InvalidConfigurationError):
            aggregate([])

    def test_csv_read_back(self, tmp_path):
        records = [synthetic(0, [0.5, 1 / 3, 1e-9]), synthetic(1, [0.25, 0.125, 0.1])]
        path = write_trials_csv(records, tmp_path / 'out' / 'trials.csv')
        loaded = read_trials_csv(path, convergence_tol=1e-2)
        assert [r.trial for r in loaded] == [0, 1]
        np.testing.assert_array_equal(loaded[0].dist_sup, records[0].dist_sup)
        assert loaded[0].converged and not loaded[1].converged

        summary_path = write_summary_csv(aggregate(records), tmp_path / 'out' / 'summary.csv')
        assert summary_path.read_text().splitlines()[0] == 'step,mean_l1,std_l1,frac_converged'

    def test_csv_read_back_is_exact(self, tmp_path):
        rng = np.random.default_rng(7)
        values = np.exp(rng.uniform(-60.0, 0.0, size=1000))
        path = write_trials_csv([synthetic(0, values)], tmp_path / 'trials.csv')
        loaded = read_trials_csv(path)[0]
        np.testing.assert_array_equal(loaded.dist_sup, values)
        np.testing.assert_array_equal(loaded.dist_l1, 2 * values)


class TestRates:

    def test_exact_quadratic(self, caplog):
        n = np.arange(1, 21)
        record = synthetic(0, np.exp(-n * (n - 1) / 2.0))
        with caplog.at_level(logging.WARNING):
            report = fit_discrete_rate([record], eta=1.0, drift=1.0)
        assert report.slope == pytest.approx(-1.0, rel=1e-9)
        assert report.window == (1, 8)
        assert report.ratio == pytest.approx(1.0, rel=1e-9)
        assert 'widening' in caplog.text

    def test_refuses_without_converged_trials(self):
        with pytest.raises(FitRefusedError):
            fit_discrete_rate([synthetic(0, [1.0, 0.5, 0.4], converged=False)], eta=0.01, drift=0.5)

    def test_single_player_ftxl_rate(self, events):
        cfg = preset('single')
        records = run_trials(cfg, events=events)
        report = fit_discrete_rate(records, eta=cfg.eta, drift=cfg.strict_equilibrium.drift)
        assert report.slope == pytest.approx(-cfg.eta ** 2, rel=1e-2)
        assert report.ratio == pytest.approx(2.0, rel=1e-2)
        assert report.r_squared > 0.999

    def test_envelope_includes_subleading_term(self):
        report = fit_discrete_rate(
            [synthetic(0, np.exp(-np.arange(1, 40) * 0.1))], eta=0.01, drift=0.5, basis='linear', model='bandit'
        )
        assert report.reference_slope is None
        n = np.array([10.0, 100.0])
        full = report.intercept - 0.5 * 1e-4 * n * (n - 1) / 2
        assert np.all(report.envelope(n, drift=0.5, eta=0.01) > full)


class TestSeparation:

    def test_ftxl_beats_ftrl_near_equilibrium(self, events):
        results = {}
        for alg in ('ftxl', 'ftrl'):
            cfg = preset('zerosum', alg=alg, feedback='full', init='near', trials=1)
            results[alg] = run_trials(cfg, events=events)[0].final_distance
        assert results['ftxl'] < 1e-6
        assert results['ftrl'] >= 10 * results['ftxl']

    def test_full_information_rates(self, events):
        ftxl_cfg = preset('zerosum', feedback='full', trials=1)
        ftxl = fit_discrete_rate(run_trials(ftxl_cfg, events=events), eta=0.01, drift=0.5)
        assert ftxl.r_squared > 0.99
        assert ftxl.slope <= 0.8 * ftxl.reference_slope

        ftrl_cfg = preset('zerosum', alg='ftrl', feedback='full', trials=1)
        ftrl = fit_discrete_rate(run_trials(ftrl_cfg, events=events), eta=0.01, drift=0.5, basis='linear')
        assert ftrl.r_squared > 0.99
        assert ftrl.slope < 0


class TestStochasticFeedback:

    def test_zero_sum_realization(self, events):
        summary = aggregate(run_trials(preset('zerosum', feedback='realization', workers=4), events=events))
        assert summary.frac_converged >= 0.9
        assert summary.final_mean_l1 < 1e-3

    def test_zero_sum_bandit(self, events):
        realization = aggregate(run_trials(preset('zerosum', feedback='realization', trials=30), events=events))
        bandit = aggregate(run_trials(preset('zerosum', workers=4), events=events))
        assert bandit.frac_converged >= 0.9
        assert bandit.final_mean_l1 < 1e-1
        assert realization.final_mean_l1 < bandit.final_mean_l1

    def test_congestion_drivers_settle_on_shared_road(self, events):
        records = run_trials(preset('congestion', workers=4), events=events)
        assert len(records) == 100
        settled = np.mean([r.fraction_settled(action=1, threshold=0.99) for r in records])
        assert settled > 0.95


def test_sweep_over_step_size(events):
    frame = sweep(preset('single'), 'eta', [0.01, 0.02])
    assert list(frame.columns) == [
        'param', 'value', 'final_mean_l1', 'final_std_l1', 'frac_converged', 'slope', 'r_squared',
    ]
    assert list(frame['value']) == [0.01, 0.02]
    assert frame['slope'].iloc[1] < frame['slope'].iloc[0] < 0
