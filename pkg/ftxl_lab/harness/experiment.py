"""
ftxl_lab.harness.experiment
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Experiment configuration and the round loop.

One round at step n:
    x_n = Q(y_n)                  strategies from scores
    record distance(x_n, x*)
    v̂_n = oracle(x_n, n)          feedback computed from x_n only
    (y, p)_{n+1} = step(...)      learner update
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from functools import cached_property
from typing import Callable, List, Optional, Tuple

import numpy as np

from ftxl_lab.errors import InvalidConfigurationError
from ftxl_lab.extensibility.events import EventManager, get_event_manager
from ftxl_lab.extensibility.hooks import HookManager, get_hook_manager
from ftxl_lab.feedback.oracles import FeedbackConfig, FeedbackOracle
from ftxl_lab.feedback.rng import trial_generator
from ftxl_lab.games.base import Game
from ftxl_lab.games.equilibria import StrictEquilibrium, drift_constant
from ftxl_lab.games.profiles import GameLayout, MixedProfile
from ftxl_lab.learners.state import VARIANTS, FTXL, initial_state
from ftxl_lab.learners.steps import step
from ftxl_lab.regularizers import ENTROPIC, Regularizer, choice_map
from ftxl_lab.utils.monitoring import track_operation

logger = logging.getLogger(__name__)

INIT_MODES = ('zero', 'near', 'random')


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything one batch of trials needs.

    Attributes:
        game: Game to play
        equilibrium: Target strict equilibrium (pure profile)
        variant: Learner variant
        eta: Step size
        friction: Friction coefficient r
        regularizer: Choice-map regularizer
        feedback: Feedback model, exploration schedule and master seed
        horizon: Number of recorded steps T (T - 1 updates)
        trials: Number of independent trials
        init: 'zero', 'near' or 'random'
        init_gap: Score lead for 'near' (default: threshold M + init_margin)
        init_margin: Added to M when init_gap is not given
        init_bound: Half-width of the box for 'random'
        workers: Thread pool size for run_trials
        divergence_guard: |y| beyond which a trial is declared diverged
        convergence_tol: Final sup-distance below which a trial counts as converged
        bisection_tol: Residual tolerance of the KKT multiplier search
        bisection_max_iter: Bisection steps allowed in the KKT multiplier search
        output: Optional output path for the trial CSV
        name: Label used in logs and summaries
    """

    game: Game
    equilibrium: Tuple[int, ...]
    variant: str = FTXL
    eta: float = 0.01
    friction: float = 0.0
    regularizer: Regularizer = ENTROPIC
    feedback: FeedbackConfig = field(default_factory=FeedbackConfig)
    horizon: int = 1000
    trials: int = 100
    init: str = 'zero'
    init_gap: Optional[float] = None
    init_margin: float = 0.1
    init_bound: float = 1.0
    workers: int = 1
    divergence_guard: float = 1e12
    convergence_tol: float = 1e-2
    bisection_tol: float = 1e-12
    bisection_max_iter: int = 200
    output: Optional[str] = None
    name: str = 'custom'

    def __post_init__(self):
        object.__setattr__(self, 'equilibrium', self.game.layout.validate_profile(self.equilibrium))
        if self.variant not in VARIANTS:
            raise InvalidConfigurationError(f"Unknown learner variant: {self.variant}")
        if self.horizon < 1:
            raise InvalidConfigurationError(f"Horizon must be at least 1, got {self.horizon}")
        if self.trials < 1:
            raise InvalidConfigurationError(f"Trial count must be at least 1, got {self.trials}")
        if self.init not in INIT_MODES:
            raise InvalidConfigurationError(f"Unknown initialization: {self.init}")
        if self.workers < 1:
            raise InvalidConfigurationError(f"Worker count must be at least 1, got {self.workers}")

    @cached_property
    def strict_equilibrium(self) -> StrictEquilibrium:
        """Drift constant and threshold of the target; raises if it is not strict."""
        return drift_constant(self.game, self.equilibrium, self.regularizer)

    @property
    def master_seed(self) -> int:
        return int(self.feedback.seed)

    def strategies(self, y) -> MixedProfile:
        return choice_map(self.regularizer, y, tol=self.bisection_tol, max_iter=self.bisection_max_iter)

    def start_gap(self) -> Optional[float]:
        if self.init != 'near':
            return None
        if self.init_gap is not None:
            return float(self.init_gap)
        return self.strict_equilibrium.threshold + self.init_margin

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'game': self.game.describe(),
            'equilibrium': list(self.equilibrium),
            'variant': self.variant,
            'eta': self.eta,
            'friction': self.friction,
            'regularizer': self.regularizer.label,
            'feedback': asdict(self.feedback),
            'horizon': self.horizon,
            'trials': self.trials,
            'init': self.init,
            'init_gap': self.init_gap,
            'init_bound': self.init_bound,
            'init_margin': self.init_margin,
            'divergence_guard': self.divergence_guard,
            'convergence_tol': self.convergence_tol,
        }


@dataclass
class TrialRecord:
    """Per-step distances of one trial to the target equilibrium."""

    trial: int
    seed: int
    dist_sup: np.ndarray
    dist_l1: np.ndarray
    converged: bool
    layout: GameLayout
    final_strategies: np.ndarray
    diverged: bool = False
    diverged_at: Optional[int] = None

    def __len__(self) -> int:
        return int(self.dist_sup.size)

    @property
    def final_distance(self) -> float:
        return float(self.dist_sup[-1])

    def strategies(self) -> MixedProfile:
        return MixedProfile(self.layout, self.final_strategies, validate=False)

    def fraction_settled(self, action: int = 1, threshold: float = 0.99) -> float:
        """Share of players whose final probability on `action` exceeds `threshold`."""
        hits = [
            action < v.size and v[action] > threshold
            for v in self.layout.split(self.final_strategies)
        ]
        return float(np.mean(hits))


def _pad(values: List[float], horizon: int) -> np.ndarray:
    out = np.empty(horizon)
    out[:len(values)] = values
    out[len(values):] = values[-1]
    return out


def run_trial(cfg: ExperimentConfig, trial: int, hooks: Optional[HookManager] = None,
              oracle: Optional[Callable] = None, events: Optional[EventManager] = None) -> TrialRecord:
    """
    Run one trial of the round loop.

    Args:
        cfg: Experiment configuration
        trial: Trial index (keys the random substream)
        hooks: Hook manager (global one by default)
        oracle: Feedback callable (x, n, rng) -> RoundOutcome; FeedbackOracle by default
        events: Event manager (global one by default)

    Returns:
        TrialRecord: distances for steps 1..T; a diverged trial repeats its
            last finite distance up to the horizon.
    """
    hooks = hooks or get_hook_manager()
    events = events or get_event_manager()
    cfg.strict_equilibrium  # raises if the target is not strict
    oracle = oracle or FeedbackOracle(cfg.game, cfg.feedback)
    layout = cfg.game.layout
    rng = trial_generator(cfg.master_seed, trial)
    target = MixedProfile.point_mass(layout, cfg.equilibrium)

    state = initial_state(
        layout, cfg.variant, cfg.eta, cfg.friction,
        init=cfg.init, equilibrium=cfg.equilibrium, gap=cfg.start_gap(),
        bound=cfg.init_bound, rng=rng,
    )
    watch_rounds = hooks.has_hooks('before_round')
    watch_steps = hooks.has_hooks('after_step')

    sup, l1 = [], []
    diverged_at = None
    x = cfg.strategies(state.y)
    for n in range(1, cfg.horizon + 1):
        sup.append(x.distance_sup(target))
        l1.append(x.distance_l1(target))
        if n == cfg.horizon:
            break
        if watch_rounds:
            hooks.trigger('before_round', trial=trial, n=n, x=x)
        outcome = oracle(x, n, rng)
        state = step(state, outcome.signal)
        if watch_steps:
            hooks.trigger('after_step', trial=trial, n=n, state=state)
        if not state.is_finite() or np.max(np.abs(state.y.flat)) > cfg.divergence_guard:
            diverged_at = n + 1
            logger.warning(f"Trial {trial} diverged at step {diverged_at}")
            break
        x = cfg.strategies(state.y)

    diverged = diverged_at is not None
    record = TrialRecord(
        trial=trial,
        seed=cfg.master_seed,
        dist_sup=_pad(sup, cfg.horizon),
        dist_l1=_pad(l1, cfg.horizon),
        converged=(not diverged) and sup[-1] < cfg.convergence_tol,
        layout=layout,
        final_strategies=x.flat.copy(),
        diverged=diverged,
        diverged_at=diverged_at,
    )
    if diverged:
        events.publish('trial.diverged', {'trial': trial, 'step': diverged_at, 'experiment': cfg.name})
    else:
        events.publish('trial.completed', {
            'trial': trial,
            'experiment': cfg.name,
            'final_dist_sup': record.final_distance,
            'converged': record.converged,
        })
    return record


@track_operation('run_trials')
def run_trials(cfg: ExperimentConfig, workers: Optional[int] = None, hooks: Optional[HookManager] = None,
               events: Optional[EventManager] = None, oracle: Optional[Callable] = None) -> List[TrialRecord]:
    """
    Run every trial of a configuration, concurrently when workers > 1.

    Records come back ordered by trial index regardless of completion order.
    """
    workers = workers or cfg.workers
    events = events or get_event_manager()
    equilibrium = cfg.strict_equilibrium
    logger.info(
        f"Running {cfg.trials} trials of '{cfg.name}' ({cfg.variant}, {cfg.feedback.model} feedback, "
        f"T={cfg.horizon}, c={equilibrium.drift:g}) on {workers} worker(s)"
    )

    def one(trial: int) -> TrialRecord:
        return run_trial(cfg, trial, hooks=hooks, oracle=oracle, events=events)

    if workers == 1:
        records = [one(t) for t in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, range(cfg.trials)))

    converged = sum(r.converged for r in records)
    events.publish('batch.completed', {
        'experiment': cfg.name,
        'trials': len(records),
        'converged': converged,
        'frac_converged': converged / len(records),
    })
    logger.info(f"Finished '{cfg.name}': {converged}/{len(records)} trials converged")
    return records
