"""
ftxl_lab.harness.sweep
~~~~~~~~~~~~~~~~~~~~~~

Grid sweep over one experiment option.
"""

import logging
from typing import Iterable, Optional

import pandas as pd

from ftxl_lab.errors import FitRefusedError
from ftxl_lab.harness.experiment import ExperimentConfig, run_trials
from ftxl_lab.harness.presets import with_option
from ftxl_lab.harness.rates import fit_discrete_rate
from ftxl_lab.harness.summary import aggregate
from ftxl_lab.learners.state import FTRL
from ftxl_lab.utils.monitoring import track_operation

logger = logging.getLogger(__name__)


@track_operation('sweep')
def sweep(cfg: ExperimentConfig, param: str, values: Iterable, workers: Optional[int] = None) -> pd.DataFrame:
    """
    Run the experiment once per value of `param`.

    Returns:
        DataFrame with columns param, value, final_mean_l1, final_std_l1,
        frac_converged, slope, r_squared (slope and r_squared are NaN when
        no rate can be fitted).
    """
    rows = []
    for value in values:
        run_cfg = with_option(cfg, param, value)
        records = run_trials(run_cfg, workers=workers)
        summary = aggregate(records)
        slope = r_squared = float('nan')
        try:
            report = fit_discrete_rate(
                records,
                eta=run_cfg.eta,
                drift=run_cfg.strict_equilibrium.drift,
                basis='linear' if run_cfg.variant == FTRL else 'quadratic',
                model=run_cfg.feedback.model,
            )
            slope, r_squared = report.slope, report.r_squared
        except FitRefusedError as e:
            logger.warning(f"No rate for {param}={value}: {e.message}")
        rows.append({
            'param': param,
            'value': value,
            'final_mean_l1': summary.final_mean_l1,
            'final_std_l1': float(summary.std_l1[-1]),
            'frac_converged': summary.frac_converged,
            'slope': slope,
            'r_squared': r_squared,
        })
    return pd.DataFrame(rows)
