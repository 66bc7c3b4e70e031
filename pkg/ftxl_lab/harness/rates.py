"""
ftxl_lab.harness.rates
~~~~~~~~~~~~~~~~~~~~~~

Convergence-rate fits on recorded distances.

FTXL decays like exp(C - c η² n(n-1)/2) under full information, so its
log-distance is regressed on n(n-1)/2; FTRL decays geometrically and is
regressed on n.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from ftxl_lab.errors import FitRefusedError

logger = logging.getLogger(__name__)

FIT_FLOOR = 1e-14
MIN_WINDOW = 10
MIN_POINTS = 3

# Subleading terms of the stochastic envelopes: coefficient · c · η^p · n^p
SUBLEADING = {
    'full': None,
    'realization': (3.0 / 5.0, 5.0 / 3.0),
    'bandit': (5.0 / 9.0, 9.0 / 5.0),
}


@dataclass
class RateReport:
    """Fitted slope of log-distance against the basis, and its reference value."""

    slope: float
    intercept: float
    r_squared: float
    basis: str
    window: Tuple[int, int]
    points: int
    reference_slope: Optional[float] = None
    model: str = 'full'

    @property
    def ratio(self) -> Optional[float]:
        """slope / reference_slope (≥ 1 means at least as fast as the envelope)."""
        if not self.reference_slope:
            return None
        return self.slope / self.reference_slope

    def envelope(self, n, drift: float, eta: float) -> np.ndarray:
        """
        Log-distance envelope C - c η² n(n-1)/2 (+ subleading term of the feedback model).
        """
        n = np.asarray(n, dtype=float)
        value = self.intercept - drift * eta ** 2 * n * (n - 1) / 2.0
        sub = SUBLEADING.get(self.model)
        if sub is not None:
            coefficient, power = sub
            value = value + coefficient * drift * eta ** power * n ** power
        return value

    def to_dict(self) -> dict:
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'r_squared': self.r_squared,
            'basis': self.basis,
            'window': list(self.window),
            'points': self.points,
            'reference_slope': self.reference_slope,
            'ratio': self.ratio,
            'model': self.model,
        }


def basis_values(steps, basis: str) -> np.ndarray:
    steps = np.asarray(steps, dtype=float)
    if basis == 'quadratic':
        return steps * (steps - 1.0) / 2.0
    if basis == 'linear':
        return steps
    raise FitRefusedError(f"Unknown fit basis: {basis}")


def fit_window(distances: Sequence[float], floor: float = FIT_FLOOR) -> Tuple[int, int]:
    """
    [start, end) indices of the post-transient window: the last half of the
    steps recorded before the distance first drops below `floor`.

    Raises:
        FitRefusedError: fewer than three usable steps.
    """
    distances = np.asarray(distances, dtype=float)
    below = np.flatnonzero(~(distances >= floor))
    end = int(below[0]) if below.size else distances.size
    start = end // 2
    if end - start < MIN_WINDOW:
        start = max(end - MIN_WINDOW, 0)
        logger.warning(
            f"Distance reaches {floor:g} at step {end + 1}; widening fit window to steps {start + 1}..{end}"
        )
    if end - start < MIN_POINTS:
        raise FitRefusedError(f"Only {end - start} steps above {floor:g}; cannot fit a rate")
    return start, end


def fit_discrete_rate(records: List, eta: float, drift: float, basis: str = 'quadratic',
                      model: str = 'full', floor: float = FIT_FLOOR) -> RateReport:
    """
    Regress log sup-distance on n(n-1)/2 (or n) over the converged records.

    Args:
        records: Trial records (or anything with `dist_sup` and `converged`)
        eta: Step size η
        drift: Drift constant c
        basis: 'quadratic' for FTXL, 'linear' for FTRL
        model: Feedback model, selects the subleading envelope term
        floor: Distances below this are treated as underflow

    Returns:
        RateReport: reference slope is -c η² for the quadratic basis, none for linear

    Raises:
        FitRefusedError: no converged record, or too few usable steps.
    """
    usable = [r for r in records if r.converged]
    if not usable:
        raise FitRefusedError("No converged trial to fit")

    xs, ys = [], []
    window = None
    for record in usable:
        start, end = fit_window(record.dist_sup, floor)
        steps = np.arange(start + 1, end + 1)
        xs.append(basis_values(steps, basis))
        ys.append(np.log(np.asarray(record.dist_sup[start:end], dtype=float)))
        window = (start + 1, end) if window is None else (min(window[0], start + 1), max(window[1], end))

    x, y = np.concatenate(xs), np.concatenate(ys)
    fit = linregress(x, y)
    reference = -drift * eta ** 2 if basis == 'quadratic' else None
    report = RateReport(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue ** 2),
        basis=basis,
        window=window,
        points=int(x.size),
        reference_slope=reference,
        model=model,
    )
    logger.info(
        f"Rate fit over {len(usable)} record(s): slope {report.slope:.4g} "
        f"(reference {reference if reference is not None else 'n/a'}), R²={report.r_squared:.4f}"
    )
    return report
