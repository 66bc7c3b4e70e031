"""
ftxl_lab.cli
~~~~~~~~~~~~

Command-line entry point.

    ftxl run --preset zerosum --alg ftxl --feedback bandit --output results/
    ftxl run --game game.json --equilibrium 0,1 --mode continuous --t-end 10
    ftxl fit-rate --input results/zerosum_trials.csv --eta 0.01 --drift 0.5
    ftxl sweep --preset zerosum --param eta --values 0.005,0.01,0.02
"""

import json
import logging
from functools import wraps
from pathlib import Path

import click

from ftxl_lab.config import load_config
from ftxl_lab.dynamics import (
    ContinuousState, IntegratorConfig, default_t_start, integrate, rate_envelope, CONSTANT, FRICTION_KINDS,
)
from ftxl_lab.errors import FTXLError, InvalidConfigurationError
from ftxl_lab.feedback.rng import trial_generator
from ftxl_lab.games.equilibria import drift_constant
from ftxl_lab.games.loader import load_game
from ftxl_lab.games.profiles import ScoreVector
from ftxl_lab.harness.experiment import run_trials
from ftxl_lab.harness.export import (
    read_trials_csv, write_summary_csv, write_trajectory_csv, write_trials_csv,
)
from ftxl_lab.harness.presets import PRESETS, build_config, preset, settings_options
from ftxl_lab.harness.rates import fit_discrete_rate
from ftxl_lab.harness.summary import aggregate
from ftxl_lab.harness.sweep import sweep as run_sweep
from ftxl_lab.learners.state import ALGORITHM_VARIANTS, initial_state
from ftxl_lab.regularizers import parse_regularizer

logger = logging.getLogger(__name__)


def _profile(value):
    if value is None:
        return None
    try:
        return tuple(int(v) for v in value.split(','))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated action indices, got {value!r}")


def _handle_errors(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FTXLError as e:
            raise click.ClickException(e.message)
    return wrapper


def experiment_options(fn):
    """Options shared by `run` and `sweep`."""
    options = [
        click.option('--preset', 'preset_name', type=click.Choice(sorted(PRESETS)), help='Named experiment setup.'),
        click.option('--game', 'game_file', type=click.Path(exists=True, dir_okay=False), help='Game spec JSON.'),
        click.option('--equilibrium', help='Target profile, e.g. 0,1 (default: the one declared by the game).'),
        click.option('--alg', type=click.Choice(sorted(ALGORITHM_VARIANTS)), help='Learning rule.'),
        click.option('--eta', type=float, help='Step size.'),
        click.option('--friction', type=float, help='Friction coefficient r.'),
        click.option('--reg', help="Regularizer: 'entropic' or 'tsallis[:q]'."),
        click.option('--feedback', type=click.Choice(['full', 'realization', 'bandit']), help='Feedback model.'),
        click.option('--eps', type=float, help='Exploration base ε.'),
        click.option('--kappa', type=float, help='Exploration exponent κ.'),
        click.option('--seed', type=int, help='Master seed (default: FTXL_SEED).'),
        click.option('--horizon', type=int, help='Steps per trial.'),
        click.option('--trials', type=int, help='Number of trials.'),
        click.option('--init', help="'zero', 'near[:gap]' or 'random[:bound]'."),
        click.option('--workers', type=int, help='Worker threads (default: FTXL_WORKERS).'),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _experiment(settings, preset_name, game_file, equilibrium, **flags):
    options = settings_options(settings, step_size=not preset_name)
    options.update({k: v for k, v in flags.items() if v is not None})
    if preset_name and game_file:
        raise click.UsageError('Use either --preset or --game, not both')
    if preset_name:
        return preset(preset_name, **options)
    if not game_file:
        raise click.UsageError('One of --preset or --game is required')
    game, declared = load_game(game_file)
    target = _profile(equilibrium) or declared
    if target is None:
        raise click.UsageError('The game file declares no equilibrium; pass --equilibrium')
    return build_config(game, target, name=Path(game_file).stem, **options)


@click.group()
@click.option('--log-level', default=None, help='Logging level (default: FTXL_LOG_LEVEL).')
@click.pass_context
def main(ctx, log_level):
    """Accelerated regularized learning in finite games."""
    settings = load_config()
    logging.basicConfig(
        level=(log_level or settings['FTXL_LOG_LEVEL']).upper(),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    ctx.obj = settings


@main.command()
@experiment_options
@click.option('--mode', type=click.Choice(['discrete', 'continuous']), default='discrete', show_default=True)
@click.option('--dt', type=float, help='Integrator step (continuous mode).')
@click.option('--t-end', type=float, default=10.0, show_default=True, help='End time (continuous mode).')
@click.option('--friction-kind', type=click.Choice(FRICTION_KINDS), default='vanishing', show_default=True)
@click.option('--output', type=click.Path(file_okay=False), help='Output directory (default: FTXL_OUTPUT_DIR).')
@click.pass_obj
@_handle_errors
def run(settings, preset_name, game_file, equilibrium, mode, dt, t_end, friction_kind, output, **options):
    """Run trials (or integrate the continuous dynamics) and write CSV files."""
    cfg = _experiment(settings, preset_name, game_file, equilibrium, **options)
    out_dir = Path(output or settings['FTXL_OUTPUT_DIR'])

    if mode == 'continuous':
        _run_continuous(settings, cfg, dt, t_end, friction_kind, out_dir)
        return

    records = run_trials(cfg)
    summary = aggregate(records)
    trials_path = write_trials_csv(records, out_dir / f'{cfg.name}_trials.csv')
    summary_path = write_summary_csv(summary, out_dir / f'{cfg.name}_summary.csv')

    click.echo(f"trials:          {summary.trials}")
    click.echo(f"converged:       {summary.frac_converged:.3f}")
    click.echo(f"final mean l1:   {summary.final_mean_l1:.3e}")
    click.echo(f"wrote {trials_path} and {summary_path}")


def _run_continuous(settings, cfg, dt, t_end, friction_kind, out_dir):
    t_start = default_t_start(cfg.friction, friction_kind, settings['FTXL_T_START_VANISHING'])
    integrator = IntegratorConfig(
        dt=dt or settings['FTXL_DT'],
        t_start=t_start,
        t_end=t_end,
        sample_every=settings['FTXL_SAMPLE_EVERY'],
    )
    layout = cfg.game.layout
    start = initial_state(
        layout, cfg.variant, cfg.eta, cfg.friction, init=cfg.init,
        equilibrium=cfg.equilibrium, gap=cfg.start_gap(), bound=cfg.init_bound,
        rng=trial_generator(cfg.master_seed, 0),
    )
    init = ContinuousState.at_rest(ScoreVector(layout, start.y.flat), t_start, cfg.friction, friction_kind)
    traj = integrate(cfg.game, cfg.regularizer, init, integrator)
    path = write_trajectory_csv(traj, out_dir / f'{cfg.name}_trajectory.csv', cfg.equilibrium)
    click.echo(f"final sup-distance: {traj.sup_distances(cfg.equilibrium)[-1]:.3e}")
    try:
        fit = rate_envelope(traj, cfg.strict_equilibrium, cfg.regularizer)
        label = 't' if friction_kind == CONSTANT and cfg.friction > 0 else 't²'
        click.echo(f"fitted {label} coefficient: {fit.coefficient:.4g} (reference {fit.reference:.4g})")
        if fit.distance_bound is not None:
            click.echo(f"final distance bound: {fit.distance_bound:.3e}")
    except FTXLError as e:
        click.echo(f"no rate fit: {e.message}")
    click.echo(f"wrote {path}")


@main.command('fit-rate')
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--eta', type=float, help='Step size used for the run (default: FTXL_ETA).')
@click.option('--drift', type=float, help='Drift constant c of the target equilibrium.')
@click.option('--preset', 'preset_name', type=click.Choice(sorted(PRESETS)), help='Take c from a preset.')
@click.option('--basis', type=click.Choice(['quadratic', 'linear']), default='quadratic', show_default=True)
@click.option('--model', type=click.Choice(['full', 'realization', 'bandit']), default='full', show_default=True)
@click.pass_obj
@_handle_errors
def fit_rate(settings, input_path, eta, drift, preset_name, basis, model):
    """Fit the decay rate of a trials CSV."""
    if drift is None:
        if not preset_name:
            raise click.UsageError('Pass --drift or --preset')
        drift = preset(preset_name).strict_equilibrium.drift
    records = read_trials_csv(input_path, settings['FTXL_CONVERGENCE_TOL'])
    report = fit_discrete_rate(
        records, eta=eta or settings['FTXL_ETA'], drift=drift, basis=basis,
        model=model, floor=settings['FTXL_FIT_FLOOR'],
    )
    click.echo(json.dumps(report.to_dict(), indent=2))


@main.command()
@experiment_options
@click.option('--param', required=True, help='Option to vary (eta, friction, eps, kappa, horizon, ...).')
@click.option('--values', required=True, help='Comma-separated values.')
@click.option('--output', type=click.Path(file_okay=False), help='Output directory (default: FTXL_OUTPUT_DIR).')
@click.pass_obj
@_handle_errors
def sweep(settings, preset_name, game_file, equilibrium, param, values, output, **options):
    """Grid sweep over one option."""
    cfg = _experiment(settings, preset_name, game_file, equilibrium, **options)
    try:
        grid = [float(v) for v in values.split(',') if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {values!r}")
    if not grid:
        raise InvalidConfigurationError('No sweep values given')
    frame = run_sweep(cfg, param, grid)
    out_dir = Path(output or settings['FTXL_OUTPUT_DIR'])
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f'{cfg.name}_sweep_{param}.csv'
    frame.to_csv(path, index=False)
    click.echo(frame.to_string(index=False))
    click.echo(f"wrote {path}")


@main.command()
@click.option('--game', 'game_file', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--profile', help='Candidate profile, e.g. 0,1 (default: the declared one).')
@click.option('--reg', default='entropic', show_default=True)
@_handle_errors
def equilibrium(game_file, profile, reg):
    """Check a strict equilibrium and print c and M."""
    game, declared = load_game(game_file)
    target = _profile(profile) or declared
    if target is None:
        raise click.UsageError('Pass --profile')
    result = drift_constant(game, target, parse_regularizer(reg))
    click.echo(json.dumps(result.to_dict(), indent=2))


if __name__ == '__main__':
    main()
