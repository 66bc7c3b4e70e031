"""
ftxl_lab.learners.identities
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Closed-form trajectories of the update rules under a constant payoff gap.

These are exact for the two-action, single-player game where the losing
action trails by `gap` every round; z denotes the score difference
y_loser - y_winner and starts at z1 with zero momentum.
"""

import math

import numpy as np


def undamped_gap(n: int, eta: float, gap: float = 1.0, z1: float = 0.0) -> float:
    """z_{n+1} under ftxl: z1 - gap · η² · n(n+1)/2."""
    return z1 - gap * eta ** 2 * n * (n + 1) / 2.0


def undamped_unrolled(eta: float, signals) -> np.ndarray:
    """
    Score displacement y_N - y_0 after N ftxl steps from zero momentum.

    Args:
        eta: Step size
        signals: (N, size) array of the signals fed at steps 1..N

    Returns:
        η² · Σ_k (N - k + 1) · v̂_k
    """
    signals = np.atleast_2d(np.asarray(signals, dtype=float))
    weights = np.arange(signals.shape[0], 0, -1, dtype=float)
    return eta ** 2 * (weights @ signals)


def constant_friction_momentum(n: int, eta: float, friction: float, gap: float = 1.0) -> float:
    """Momentum of the gap coordinate after n constant-friction steps: -gap (1 - (1-ηr)^n) / r."""
    return -gap * (1.0 - (1.0 - eta * friction) ** n) / friction


def constant_friction_gap(n: int, eta: float, friction: float, gap: float = 1.0, z1: float = 0.0) -> float:
    """z_{n+1} under constant friction; linear in n with slope -η·gap/r once the transient fades."""
    q = 1.0 - eta * friction
    total = n - q * (1.0 - q ** n) / (eta * friction)
    return z1 - eta * gap / friction * total


def vanishing_friction_coefficient(eta: float, friction: float, gap: float = 1.0) -> float:
    """Leading coefficient of N² in -z_N under vanishing friction: gap · η² / (2(ηr + 1))."""
    return gap * eta ** 2 / (2.0 * (eta * friction + 1.0))


def discrete_sum_bruteforce(a: float, m: int) -> float:
    """Σ_{k=1}^{m-1} Π_{l=0}^{k-1} (1 - a/(m-l)), term by term."""
    return sum(
        math.prod(1.0 - a / (m - l) for l in range(k))
        for k in range(1, m)
    )


def discrete_sum_closed_form(a: float, m: int) -> float:
    """(m - a)/(1 + a) - Π_{l=1}^{m} (1 - a/l) / (1 + a)."""
    product = math.prod(1.0 - a / l for l in range(1, m + 1))
    return (m - a) / (1.0 + a) - product / (1.0 + a)
