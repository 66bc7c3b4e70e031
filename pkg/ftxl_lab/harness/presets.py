"""
ftxl_lab.harness.presets
~~~~~~~~~~~~~~~~~~~~~~~~

Named experiment setups and the override parser shared by the CLI and API.
"""

import logging
from dataclasses import replace
from typing import Any, Dict, Optional, Sequence

from ftxl_lab.errors import InvalidConfigurationError, UnknownPresetError
from ftxl_lab.feedback.oracles import FeedbackConfig
from ftxl_lab.games.base import Game
from ftxl_lab.games.library import (
    congestion_equilibrium, congestion_game, single_player_game, zero_sum_game,
    SINGLE_PLAYER_EQUILIBRIUM, ZERO_SUM_EQUILIBRIUM,
)
from ftxl_lab.harness.experiment import ExperimentConfig
from ftxl_lab.learners.state import ALGORITHM_VARIANTS
from ftxl_lab.regularizers import parse_regularizer

logger = logging.getLogger(__name__)

PRESETS = {
    'zerosum': {
        'description': '3x3 zero-sum game with strict equilibrium (α1, β2)',
        'eta': 0.01,
        'feedback': 'bandit',
        'eps': 0.1,
        'kappa': 0.0,
        'horizon': 1000,
        'trials': 100,
        'init': 'zero',
    },
    'congestion': {
        'description': '100 drivers, fixed road of cost 1.1 and shared road of cost d/100',
        'eta': 0.01,
        'feedback': 'bandit',
        'eps': 1.0,
        'kappa': 0.25,
        'horizon': 1000,
        'trials': 100,
        'init': 'random:1',
    },
    'single': {
        'description': 'One player, two actions, payoff gap 1',
        'eta': 0.01,
        'feedback': 'full',
        'eps': 0.1,
        'kappa': 0.0,
        'horizon': 1000,
        'trials': 1,
        'init': 'zero',
    },
}


def _preset_game(name: str):
    if name == 'zerosum':
        return zero_sum_game(), ZERO_SUM_EQUILIBRIUM
    if name == 'congestion':
        game = congestion_game()
        return game, congestion_equilibrium(game.num_players)
    if name == 'single':
        return single_player_game(), SINGLE_PLAYER_EQUILIBRIUM
    raise UnknownPresetError(name)


NUMERIC_OPTIONS = {
    'init_margin': 'FTXL_INIT_MARGIN',
    'divergence_guard': 'FTXL_DIVERGENCE_GUARD',
    'convergence_tol': 'FTXL_CONVERGENCE_TOL',
    'bisection_tol': 'FTXL_BISECTION_TOL',
    'bisection_max_iter': 'FTXL_BISECTION_MAX_ITER',
}


def settings_options(settings: Dict[str, Any], step_size: bool = True) -> Dict[str, Any]:
    """
    Experiment options taken from FTXL_* settings (app.config or load_config()).

    Args:
        settings: Effective configuration
        step_size: Also take eta from FTXL_ETA; presets carry their own step size
    """
    options = {option: settings.get(key) for option, key in NUMERIC_OPTIONS.items()}
    options['friction'] = settings.get('FTXL_FRICTION')
    options['seed'] = settings.get('FTXL_SEED')
    options['workers'] = settings.get('FTXL_WORKERS')
    if step_size:
        options['eta'] = settings.get('FTXL_ETA')
    return {k: v for k, v in options.items() if v is not None}


def parse_init(spec: str) -> Dict[str, Any]:
    """
    'zero' | 'near[:gap]' | 'random[:bound]' -> ExperimentConfig fields.
    """
    mode, _, arg = (spec or 'zero').partition(':')
    try:
        value = float(arg) if arg else None
    except ValueError:
        raise InvalidConfigurationError(f"Invalid initialization argument: {spec!r}")
    if mode == 'zero':
        return {'init': 'zero'}
    if mode == 'near':
        return {'init': 'near', 'init_gap': value}
    if mode == 'random':
        return {'init': 'random', 'init_bound': 1.0 if value is None else value}
    raise InvalidConfigurationError(f"Unknown initialization: {spec!r}")


def build_config(game: Game, equilibrium: Sequence[int], name: str = 'custom',
                 base: Optional[Dict[str, Any]] = None, **overrides) -> ExperimentConfig:
    """
    Assemble an ExperimentConfig from flat option names.

    Recognised options: alg, eta, friction, reg, feedback, eps, kappa, seed,
    horizon, trials, init, workers, output, plus the numerical settings in
    NUMERIC_OPTIONS. Unknown or None values are ignored.
    """
    options = dict(base or {})
    options.update({k: v for k, v in overrides.items() if v is not None})

    alg = options.get('alg', 'ftxl')
    if alg not in ALGORITHM_VARIANTS:
        raise InvalidConfigurationError(f"Unknown algorithm: {alg}")

    feedback = FeedbackConfig(
        model=options.get('feedback', 'full'),
        epsilon=float(options.get('eps', 0.1)),
        kappa=float(options.get('kappa', 0.0)),
        seed=int(options.get('seed', 0)),
    )
    return ExperimentConfig(
        game=game,
        equilibrium=tuple(equilibrium),
        variant=ALGORITHM_VARIANTS[alg],
        eta=float(options.get('eta', 0.01)),
        friction=float(options.get('friction', 0.0)),
        regularizer=parse_regularizer(options.get('reg', 'entropic')),
        feedback=feedback,
        horizon=int(options.get('horizon', 1000)),
        trials=int(options.get('trials', 100)),
        workers=int(options.get('workers', 1)),
        init_margin=float(options.get('init_margin', 0.1)),
        divergence_guard=float(options.get('divergence_guard', 1e12)),
        convergence_tol=float(options.get('convergence_tol', 1e-2)),
        bisection_tol=float(options.get('bisection_tol', 1e-12)),
        bisection_max_iter=int(options.get('bisection_max_iter', 200)),
        output=options.get('output'),
        name=name,
        **parse_init(options.get('init', 'zero')),
    )


def preset(name: str, **overrides) -> ExperimentConfig:
    """
    Experiment configuration of a named preset, with optional overrides.

    Raises:
        UnknownPresetError: name is not in PRESETS.
    """
    if name not in PRESETS:
        raise UnknownPresetError(name)
    game, equilibrium = _preset_game(name)
    base = {k: v for k, v in PRESETS[name].items() if k != 'description'}
    return build_config(game, equilibrium, name=name, base=base, **overrides)


def with_option(cfg: ExperimentConfig, param: str, value) -> ExperimentConfig:
    """Copy of cfg with one option changed (feedback options included)."""
    feedback_fields = {'eps': 'epsilon', 'kappa': 'kappa', 'seed': 'seed', 'feedback': 'model'}
    if param in feedback_fields:
        return replace(cfg, feedback=replace(cfg.feedback, **{feedback_fields[param]: value}))
    if param in ('eta', 'friction', 'init_gap', 'init_bound'):
        return replace(cfg, **{param: float(value)})
    if param in ('horizon', 'trials'):
        return replace(cfg, **{param: int(value)})
    raise InvalidConfigurationError(f"Cannot sweep over {param!r}")
