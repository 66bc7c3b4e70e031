"""
Tests for the command-line interface.
"""

import json

import pytest
from click.testing import CliRunner

from ftxl_lab.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def game_file(tmp_path):
    path = tmp_path / 'coordination.json'
    path.write_text(json.dumps({
        'players': 2,
        'actions': [2, 2],
        'payoffs': [2, 0, 0, 1, 2, 0, 0, 1],
        'equilibrium': [0, 0],
    }))
    return path


def test_run_and_fit(runner, tmp_path):
    result = runner.invoke(main, ['run', '--preset', 'single', '--output', str(tmp_path)])
    assert result.exit_code == 0, result.output
    trials = tmp_path / 'single_trials.csv'
    assert trials.exists()
    assert (tmp_path / 'single_summary.csv').exists()
    assert 'converged:       1.000' in result.output

    fit = runner.invoke(main, ['fit-rate', '--input', str(trials), '--preset', 'single'])
    assert fit.exit_code == 0, fit.output
    assert '"slope"' in fit.output
    assert '"basis": "quadratic"' in fit.output


def test_run_game_file(runner, game_file, tmp_path):
    result = runner.invoke(main, [
        'run', '--game', str(game_file), '--feedback', 'realization', '--trials', '2',
        '--horizon', '100', '--output', str(tmp_path),
    ])
    assert result.exit_code == 0, result.output
    assert (tmp_path / 'coordination_trials.csv').exists()


def test_continuous_mode(runner, tmp_path):
    result = runner.invoke(main, [
        'run', '--preset', 'single', '--mode', 'continuous', '--t-end', '5', '--dt', '0.01',
        '--output', str(tmp_path),
    ])
    assert result.exit_code == 0, result.output
    assert (tmp_path / 'single_trajectory.csv').exists()
    assert 'fitted t² coefficient' in result.output
    assert 'final distance bound' in result.output


def test_sweep(runner, tmp_path):
    result = runner.invoke(main, [
        'sweep', '--preset', 'single', '--param', 'eta', '--values', '0.01,0.02', '--output', str(tmp_path),
    ])
    assert result.exit_code == 0, result.output
    assert (tmp_path / 'single_sweep_eta.csv').exists()


def test_equilibrium_command(runner, game_file):
    result = runner.invoke(main, ['equilibrium', '--game', str(game_file)])
    assert result.exit_code == 0, result.output
    assert '"drift": 1.0' in result.output


def test_preset_and_game_are_exclusive(runner, game_file):
    result = runner.invoke(main, ['run', '--preset', 'single', '--game', str(game_file)])
    assert result.exit_code == 2
    assert 'either --preset or --game' in result.output


def test_invalid_configuration_is_reported(runner, tmp_path):
    result = runner.invoke(main, [
        'run', '--preset', 'single', '--alg', 'ftxl-cf', '--friction', '200', '--output', str(tmp_path),
    ])
    assert result.exit_code == 1
    assert 'η·r < 1' in result.output


def test_environment_divergence_guard(runner, tmp_path):
    result = runner.invoke(
        main, ['run', '--preset', 'single', '--output', str(tmp_path)],
        env={'FTXL_DIVERGENCE_GUARD': '1.0'},
    )
    assert result.exit_code == 0, result.output
    assert 'converged:       0.000' in result.output
