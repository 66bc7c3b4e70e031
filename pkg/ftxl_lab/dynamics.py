"""
ftxl_lab.dynamics
~~~~~~~~~~~~~~~~~

Continuous-time FTXL as a first-order system and its fixed-step integration.

    dy/dt = p
    dp/dt = v(Q(y)) - (r/t) p      (vanishing friction)
    dp/dt = v(Q(y)) - r p          (constant friction)

with p(t_start) = 0.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from ftxl_lab.errors import DivergenceError, DomainError, FitRefusedError, InvalidConfigurationError
from ftxl_lab.games.base import Game
from ftxl_lab.games.equilibria import StrictEquilibrium
from ftxl_lab.games.profiles import GameLayout, MixedProfile, ScoreVector
from ftxl_lab.regularizers import Regularizer, choice_map, distance_bound
from ftxl_lab.utils.monitoring import track_operation

logger = logging.getLogger(__name__)

VANISHING = 'vanishing'
CONSTANT = 'constant'
FRICTION_KINDS = (VANISHING, CONSTANT)

SAMPLE_EVERY = 10
FIT_FLOOR = 1e-14
CONVERGED_DISTANCE = 1e-3
TRAJECTORY_SIMPLEX_TOL = 1e-9


@dataclass
class ContinuousState:
    """Time, scores and momentum of the continuous dynamics."""

    t: float
    y: ScoreVector
    p: ScoreVector
    friction: float = 0.0
    friction_kind: str = VANISHING

    def __post_init__(self):
        if self.friction_kind not in FRICTION_KINDS:
            raise InvalidConfigurationError(f"Unknown friction kind: {self.friction_kind}")
        if self.friction < 0:
            raise InvalidConfigurationError(f"Friction must be nonnegative, got {self.friction}")
        if self.y.layout != self.p.layout:
            raise InvalidConfigurationError("Scores and momentum have different layouts")
        if not (math.isfinite(self.t) and self.y.is_finite() and self.p.is_finite()):
            raise DivergenceError(self.t)

    @property
    def layout(self) -> GameLayout:
        return self.y.layout

    @classmethod
    def at_rest(cls, y: ScoreVector, t_start: float, friction: float = 0.0,
                friction_kind: str = VANISHING) -> 'ContinuousState':
        """State with zero momentum at t_start."""
        return cls(t=float(t_start), y=y, p=ScoreVector.zeros(y.layout),
                   friction=float(friction), friction_kind=friction_kind)


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed step, time window and sampling stride."""

    dt: float = 1e-3
    t_start: float = 0.0
    t_end: float = 10.0
    sample_every: int = SAMPLE_EVERY

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidConfigurationError(f"Step must be positive, got {self.dt}")
        if self.t_start < 0:
            raise InvalidConfigurationError(f"Start time must be nonnegative, got {self.t_start}")
        if not self.t_end > self.t_start:
            raise InvalidConfigurationError(f"End time {self.t_end} must exceed start time {self.t_start}")
        if self.dt > (self.t_end - self.t_start) / 10.0:
            raise InvalidConfigurationError(
                f"Step {self.dt} is too coarse for the window [{self.t_start}, {self.t_end}]"
            )
        if self.sample_every < 1:
            raise InvalidConfigurationError(f"Sampling stride must be at least 1, got {self.sample_every}")

    @property
    def num_steps(self) -> int:
        return max(int(round((self.t_end - self.t_start) / self.dt)), 1)


def default_t_start(friction: float, friction_kind: str, vanishing_start: float = 1e-3) -> float:
    """1e-3 when the r/t coefficient is singular at 0, else 0."""
    return vanishing_start if friction_kind == VANISHING and friction > 0 else 0.0


@dataclass
class Trajectory:
    """Sampled states of one integration run."""

    layout: GameLayout
    times: np.ndarray
    y: np.ndarray
    p: np.ndarray
    x: np.ndarray
    friction: float = 0.0
    friction_kind: str = VANISHING
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.times.size)

    def strategies(self, k: int) -> MixedProfile:
        return MixedProfile(self.layout, self.x[k], validate=False)

    def final_state(self) -> ContinuousState:
        return ContinuousState(
            t=float(self.times[-1]),
            y=ScoreVector(self.layout, self.y[-1]),
            p=ScoreVector(self.layout, self.p[-1]),
            friction=self.friction,
            friction_kind=self.friction_kind,
        )

    def sup_distances(self, profile: Sequence[int]) -> np.ndarray:
        target = MixedProfile.point_mass(self.layout, profile).flat
        return np.max(np.abs(self.x - target), axis=1)

    def to_frame(self, profile: Optional[Sequence[int]] = None) -> pd.DataFrame:
        """t, one column per (player, action) strategy, and the sup-distance when a target is given."""
        columns = {'t': self.times}
        for i in range(self.layout.num_players):
            for a, k in enumerate(range(*self.layout.block(i).indices(self.layout.size))):
                columns[f'x{i}_{a}'] = self.x[:, k]
        if profile is not None:
            columns['dist_sup'] = self.sup_distances(profile)
        return pd.DataFrame(columns)


def _drift(game: Game, reg: Regularizer, layout: GameLayout, t: float, y: np.ndarray, p: np.ndarray,
           friction: float, friction_kind: str) -> Tuple[np.ndarray, np.ndarray]:
    x = choice_map(reg, ScoreVector(layout, y))
    v = game.payoff_field(x)
    if friction == 0.0:
        return p, v
    if friction_kind == CONSTANT:
        return p, v - friction * p
    if t <= 0.0:
        raise DomainError(f"Vanishing friction r/t is undefined at t={t}")
    return p, v - (friction / t) * p


def vector_field(game: Game, reg: Regularizer, s: ContinuousState) -> Tuple[np.ndarray, np.ndarray]:
    """
    (dy/dt, dp/dt) at state s.

    Raises:
        DomainError: t <= 0 with positive vanishing friction.
    """
    return _drift(game, reg, s.layout, s.t, s.y.flat, s.p.flat, s.friction, s.friction_kind)


def _rk4_step(game, reg, layout, t, y, p, h, friction, kind):
    k1y, k1p = _drift(game, reg, layout, t, y, p, friction, kind)
    k2y, k2p = _drift(game, reg, layout, t + h / 2, y + h / 2 * k1y, p + h / 2 * k1p, friction, kind)
    k3y, k3p = _drift(game, reg, layout, t + h / 2, y + h / 2 * k2y, p + h / 2 * k2p, friction, kind)
    k4y, k4p = _drift(game, reg, layout, t + h, y + h * k3y, p + h * k3p, friction, kind)
    y_next = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
    p_next = p + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
    return y_next, p_next


@track_operation('integrate')
def integrate(game: Game, reg: Regularizer, init: ContinuousState, cfg: IntegratorConfig) -> Trajectory:
    """
    Classical fixed-step fourth-order Runge-Kutta integration from init.t to cfg.t_end.

    Samples every `cfg.sample_every` steps, always including both endpoints.

    Raises:
        DivergenceError: the state became non-finite; carries the last finite time.
    """
    if abs(init.t - cfg.t_start) > 1e-15:
        logger.debug(f"Initial time {init.t} overrides configured start {cfg.t_start}")
    layout = init.layout
    steps = cfg.num_steps
    h = (cfg.t_end - init.t) / steps
    friction, kind = init.friction, init.friction_kind

    y, p, t = init.y.flat.copy(), init.p.flat.copy(), init.t
    times, ys, ps, xs = [], [], [], []

    def record():
        x = choice_map(reg, ScoreVector(layout, y))
        x.validate(TRAJECTORY_SIMPLEX_TOL)
        times.append(t)
        ys.append(y.copy())
        ps.append(p.copy())
        xs.append(x.flat)

    record()
    for k in range(1, steps + 1):
        y_next, p_next = _rk4_step(game, reg, layout, t, y, p, h, friction, kind)
        if not (np.all(np.isfinite(y_next)) and np.all(np.isfinite(p_next))):
            logger.error(f"Integration diverged after t={t:g}")
            raise DivergenceError(t)
        y, p = y_next, p_next
        t = init.t + k * h
        if k % cfg.sample_every == 0 or k == steps:
            record()

    logger.debug(f"Integrated {steps} steps of size {h:g} on {game.name}")
    return Trajectory(
        layout=layout,
        times=np.asarray(times),
        y=np.asarray(ys),
        p=np.asarray(ps),
        x=np.asarray(xs),
        friction=friction,
        friction_kind=kind,
        meta={'dt': h, 'steps': steps, 'regularizer': reg.label},
    )


def gap_trajectory(traj: Trajectory, profile: Sequence[int]) -> np.ndarray:
    """
    Score gaps y_α - y_α* along the samples.

    Returns:
        (samples, size) array; equilibrium coordinates are zero.
    """
    profile = traj.layout.validate_profile(profile)
    reference = np.repeat(
        traj.y[:, traj.layout.flat_indices(profile)], traj.layout.action_counts, axis=1
    )
    return traj.y - reference


def example_gap_closed_form(t, t_start: float = 0.0, friction: float = 0.0, kind: str = VANISHING,
                            gap: float = 1.0):
    """
    z(t) - z(t_start) for the two-action example, z = y_loser - y_winner, p(t_start) = 0.

    Vanishing friction solves (t^r z')' = -gap t^r; constant friction solves
    z'' = -gap - r z'.
    """
    t = np.asarray(t, dtype=float)
    t0, r = float(t_start), float(friction)
    if kind == CONSTANT:
        if r == 0.0:
            return -gap * (t - t0) ** 2 / 2.0
        s = t - t0
        return -gap * (s / r - (1.0 - np.exp(-r * s)) / r ** 2)
    if kind != VANISHING:
        raise InvalidConfigurationError(f"Unknown friction kind: {kind}")
    main = (t ** 2 - t0 ** 2) / 2.0
    if r == 0.0 or t0 == 0.0:
        tail = 0.0
    elif r == 1.0:
        tail = t0 ** 2 * np.log(t / t0)
    else:
        tail = t0 ** (r + 1) * (t ** (1.0 - r) - t0 ** (1.0 - r)) / (1.0 - r)
    return -gap * (main - tail) / (r + 1.0)


@dataclass
class EnvelopeFit:
    """Least-squares fit of log sup-distance against t² (or t for constant friction)."""

    coefficient: float
    intercept: float
    r_squared: float
    reference: Optional[float]
    basis: str
    window: Tuple[float, float]
    distance_bound: Optional[float] = None

    @property
    def relative_error(self) -> Optional[float]:
        if not self.reference:
            return None
        return (self.coefficient - self.reference) / self.reference

    def to_dict(self) -> dict:
        return {
            'coefficient': self.coefficient,
            'intercept': self.intercept,
            'r_squared': self.r_squared,
            'reference': self.reference,
            'relative_error': self.relative_error,
            'basis': self.basis,
            'window': list(self.window),
            'distance_bound': self.distance_bound,
        }


def fit_envelope(times, distances, basis: str = 'quadratic', reference: Optional[float] = None,
                 floor: float = FIT_FLOOR) -> EnvelopeFit:
    """
    Fit log d(t) ≈ intercept - coefficient · φ(t) with φ(t) = t² or t.

    Uses the last half of the samples taken before the distance drops below `floor`.

    Raises:
        FitRefusedError: fewer than three usable samples.
    """
    times = np.asarray(times, dtype=float)
    distances = np.asarray(distances, dtype=float)
    below = np.flatnonzero(~(distances >= floor))
    end = int(below[0]) if below.size else times.size
    start = end // 2
    if end - start < 3:
        raise FitRefusedError(f"Only {end - start} samples above {floor:g} to fit")
    t = times[start:end]
    phi = t ** 2 if basis == 'quadratic' else t
    fit = linregress(phi, np.log(distances[start:end]))
    return EnvelopeFit(
        coefficient=float(-fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue ** 2),
        reference=reference,
        basis=basis,
        window=(float(t[0]), float(t[-1])),
    )


def rate_envelope(traj: Trajectory, eq: StrictEquilibrium, reg: Optional[Regularizer] = None,
                  floor: float = FIT_FLOOR) -> EnvelopeFit:
    """
    Fitted decay rate of the sup-distance to eq along a trajectory.

    Vanishing friction: quadratic in t, reference c/(2(r+1)).
    Constant friction: linear in t, reference c/r.

    With `reg`, the fit also carries the score-gap bound on the final
    sup-distance; it stays None while some gap is still positive.

    Raises:
        FitRefusedError: final distance not below 1e-3, or too few samples.
    """
    distances = traj.sup_distances(eq.profile)
    if not distances[-1] < CONVERGED_DISTANCE:
        raise FitRefusedError(f"Trajectory ends at distance {distances[-1]:.3g}; nothing to fit")
    r = traj.friction
    if traj.friction_kind == CONSTANT and r > 0:
        basis, reference = 'linear', eq.drift / r
    else:
        basis, reference = 'quadratic', eq.drift / (2.0 * (r + 1.0))
    fit = fit_envelope(traj.times, distances, basis=basis, reference=reference, floor=floor)
    if reg is not None:
        final = ScoreVector(traj.layout, traj.y[-1])
        try:
            fit.distance_bound = float(np.max(distance_bound(reg, final, eq.profile)))
        except DomainError as e:
            logger.debug(f"No distance bound for {reg.label}: {e.message}")
    return fit
