"""
ftxl_lab.regularizers
~~~~~~~~~~~~~~~~~~~~~

Regularized best-response (mirror) maps.

A decomposable regularizer h(x) = Σ θ(x_α) with θ'(0+) = -∞ induces the map
Q(y) = argmax_{x ∈ Δ} <y, x> - h(x). Its KKT conditions read
y_α = θ'(x_α) + λ, so Q is found by a scalar search on the multiplier λ.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import bisect

from ftxl_lab.errors import DomainError, InvalidConfigurationError, NumericalFailureError
from ftxl_lab.games.profiles import GameLayout, MixedProfile, ScoreVector

logger = logging.getLogger(__name__)

PROBABILITY_FLOOR = 1e-300
SUM_TOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class Regularizer:
    """
    Decomposable regularizer θ on [0, 1].

    Attributes:
        kind: 'entropic' or 'decomposable'
        theta: θ
        dtheta: θ'
        d2theta: θ''
        dtheta_inv: (θ')⁻¹ on the range of θ' (optional; inner bisection otherwise)
        label: Name used in logs and CSV headers
    """

    kind: str
    theta: Callable[[float], float]
    dtheta: Callable[[float], float]
    d2theta: Callable[[float], float]
    dtheta_inv: Optional[Callable[[float], float]] = None
    label: str = 'decomposable'

    def __post_init__(self):
        if self.kind not in ('entropic', 'decomposable'):
            raise InvalidConfigurationError(f"Unknown regularizer kind: {self.kind}")
        self.check()

    def check(self, grid_points: int = 64):
        """Spot-check strong convexity and steepness at the boundary."""
        grid = np.linspace(1.0 / grid_points, 1.0, grid_points)
        if any(self.d2theta(float(x)) <= 0 for x in grid):
            raise InvalidConfigurationError(f"{self.label}: θ'' is not positive on (0, 1]")
        if not self.dtheta(1e-12) < self.dtheta(1.0) - 20.0:
            raise InvalidConfigurationError(f"{self.label}: θ' is not steep at 0")
        return self

    def inverse_derivative(self, t: float) -> float:
        """
        (θ')⁻¹(t), extended by +inf above θ'(1).

        The extension keeps Σ (θ')⁻¹(y_α - λ) decreasing in λ over the
        whole real line, which the KKT search relies on.
        """
        if self.dtheta_inv is not None:
            return self.dtheta_inv(t)
        if t > self.dtheta(1.0):
            return math.inf
        log_floor = math.log(PROBABILITY_FLOOR)
        if t <= self.dtheta(PROBABILITY_FLOOR):
            return PROBABILITY_FLOOR
        # θ' is increasing; search in log-space over (floor, 1]
        s = bisect(lambda u: self.dtheta(math.exp(u)) - t, log_floor, 0.0, xtol=1e-15, maxiter=MAX_ITER)
        return math.exp(s)


def _entropic() -> Regularizer:
    return Regularizer(
        kind='entropic',
        theta=lambda x: x * math.log(x) if x > 0 else 0.0,
        dtheta=lambda x: 1.0 + math.log(x),
        d2theta=lambda x: 1.0 / x,
        dtheta_inv=lambda t: math.exp(t - 1.0),
        label='entropic',
    )


ENTROPIC = _entropic()


def entropic() -> Regularizer:
    return ENTROPIC


def tsallis(q: float = 0.5) -> Regularizer:
    """
    Tsallis family θ(x) = -x^q / (q(1-q)) for q in (0, 1).

    q = 1/2 gives θ(x) = -4√x with θ'(x) = -2/√x.
    """
    if not 0.0 < q < 1.0:
        raise InvalidConfigurationError(f"Tsallis exponent must lie in (0, 1), got {q}")
    scale = q * (1.0 - q)

    def dtheta_inv(t: float) -> float:
        if t >= 0.0:
            return math.inf
        return (-(1.0 - q) * t) ** (1.0 / (q - 1.0))

    return Regularizer(
        kind='decomposable',
        theta=lambda x: -(x ** q) / scale,
        dtheta=lambda x: -(x ** (q - 1.0)) / (1.0 - q),
        d2theta=lambda x: x ** (q - 2.0),
        dtheta_inv=dtheta_inv,
        label=f'tsallis:{q:g}',
    )


def parse_regularizer(spec: str) -> Regularizer:
    """
    Parse a CLI regularizer flag.

    Accepted forms: 'entropic', 'tsallis', 'tsallis:<exponent>'.
    """
    name, _, arg = (spec or 'entropic').strip().partition(':')
    name = name.lower()
    if name == 'entropic':
        return ENTROPIC
    if name == 'tsallis':
        try:
            return tsallis(float(arg) if arg else 0.5)
        except ValueError:
            raise InvalidConfigurationError(f"Invalid Tsallis exponent: {arg!r}")
    raise InvalidConfigurationError(f"Unknown regularizer: {spec!r}")


def logit_map(y) -> np.ndarray:
    """Λ(y) = exp(y) / ‖exp(y)‖₁, shifted by max(y) against overflow."""
    y = np.asarray(y, dtype=float)
    weights = np.exp(y - np.max(y))
    return weights / weights.sum()


def _kkt_sum(reg: Regularizer, y: np.ndarray, lam: float) -> np.ndarray:
    return np.array([reg.inverse_derivative(float(v - lam)) for v in y])


def mirror_map(reg: Regularizer, y, tol: float = SUM_TOL, max_iter: int = MAX_ITER) -> np.ndarray:
    """
    Maximizer of <y, x> - Σ θ(x_α) over the simplex via the KKT multiplier.

    Raises:
        NumericalFailureError: if the multiplier search leaves a residual
            above `tol` after `max_iter` bisection steps.
    """
    y = np.asarray(y, dtype=float)
    if y.size == 1:
        return np.ones(1)
    d1 = reg.dtheta(1.0)
    d_uniform = reg.dtheta(1.0 / y.size)
    lo = float(np.min(y)) - d1 - 1.0
    hi = float(np.max(y)) - d_uniform + 1.0

    def excess(lam: float) -> float:
        total = float(np.sum(_kkt_sum(reg, y, lam)))
        return total - 1.0 if math.isfinite(total) else math.inf

    lam, result = bisect(excess, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps,
                         maxiter=max_iter, full_output=True, disp=False)
    x = np.maximum(_kkt_sum(reg, y, lam), PROBABILITY_FLOOR)
    residual = abs(float(x.sum()) - 1.0)
    if not math.isfinite(residual) or (residual > tol and not result.converged):
        raise NumericalFailureError(
            f"KKT multiplier search did not converge for {reg.label}",
            residual=residual,
            iterations=result.iterations,
        )
    return x / x.sum()


def choice_map(reg: Regularizer, y: ScoreVector, tol: float = SUM_TOL, max_iter: int = MAX_ITER) -> MixedProfile:
    """
    Per-player regularized best response to a flat score vector.

    `tol` and `max_iter` go to the KKT search; the entropic map is closed-form.
    """
    layout = y.layout
    if reg.kind == 'entropic':
        matrix = layout.as_matrix(y.flat)
        if matrix is not None:
            weights = np.exp(matrix - matrix.max(axis=1, keepdims=True))
            flat = (weights / weights.sum(axis=1, keepdims=True)).ravel()
        else:
            flat = np.concatenate([logit_map(v) for v in y.vectors()])
    else:
        flat = np.concatenate([mirror_map(reg, v, tol=tol, max_iter=max_iter) for v in y.vectors()])
    return MixedProfile(layout, flat, validate=False)


def distance_bound(reg: Regularizer, y: ScoreVector, eq) -> np.ndarray:
    """
    Upper bound on ‖Q(y_i) - x*_i‖∞ for each player from the score gaps.

    Σ_{α≠α*} (θ')⁻¹(θ'(1) + y_α - y_α*).

    Raises:
        DomainError: if some gap y_α - y_α* is positive.
    """
    layout: GameLayout = y.layout
    eq = layout.validate_profile(eq)
    d1 = reg.dtheta(1.0)
    bounds = np.zeros(layout.num_players)
    for i, (scores, star) in enumerate(zip(y.vectors(), eq)):
        gaps = np.delete(scores - scores[star], star)
        if np.any(gaps > 0):
            raise DomainError(f"Player {i}: score gap {float(gaps.max()):g} is outside the bound's domain")
        bounds[i] = sum(reg.inverse_derivative(d1 + float(g)) for g in gaps)
    return bounds
