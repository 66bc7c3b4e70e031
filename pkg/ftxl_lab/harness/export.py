"""
ftxl_lab.harness.export
~~~~~~~~~~~~~~~~~~~~~~~

CSV files for trial distances, per-step summaries and trajectories.

    trials:   trial,step,dist_sup,dist_l1
    summary:  step,mean_l1,std_l1,frac_converged
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ftxl_lab.errors import InvalidConfigurationError

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = ['trial', 'step', 'dist_sup', 'dist_l1']
SUMMARY_COLUMNS = ['step', 'mean_l1', 'std_l1', 'frac_converged']
FLOAT_FORMAT = '%.17g'


@dataclass
class RecordedTrial:
    """A trial read back from CSV."""

    trial: int
    dist_sup: np.ndarray
    dist_l1: np.ndarray
    converged: bool

    def __len__(self) -> int:
        return int(self.dist_sup.size)


def _prepare(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def trials_frame(records: List) -> pd.DataFrame:
    frames = [
        pd.DataFrame({
            'trial': r.trial,
            'step': np.arange(1, len(r.dist_sup) + 1),
            'dist_sup': r.dist_sup,
            'dist_l1': r.dist_l1,
        })
        for r in records
    ]
    return pd.concat(frames, ignore_index=True)[TRIAL_COLUMNS]


def write_trials_csv(records: List, path: Union[str, Path]) -> Path:
    """One row per (trial, step)."""
    path = _prepare(path)
    trials_frame(records).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote {len(records)} trial(s) to {path}")
    return path


def write_summary_csv(summary, path: Union[str, Path]) -> Path:
    path = _prepare(path)
    summary.to_frame()[SUMMARY_COLUMNS].to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote summary of {summary.trials} trial(s) to {path}")
    return path


def write_trajectory_csv(traj, path: Union[str, Path], profile: Optional[Sequence[int]] = None) -> Path:
    """t, per-action strategies and (with a target) sup-distance."""
    path = _prepare(path)
    traj.to_frame(profile).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote {len(traj)} trajectory samples to {path}")
    return path


def read_trials_csv(path: Union[str, Path], convergence_tol: float = 1e-2) -> List[RecordedTrial]:
    """
    Read a trials CSV back into records.

    Raises:
        InvalidConfigurationError: missing columns.
    """
    frame = pd.read_csv(path, float_precision='round_trip')
    missing = [c for c in TRIAL_COLUMNS if c not in frame.columns]
    if missing:
        raise InvalidConfigurationError(f"{path}: missing columns {missing}")
    records = []
    for trial, group in frame.sort_values(['trial', 'step']).groupby('trial', sort=True):
        sup = group['dist_sup'].to_numpy(dtype=float)
        records.append(RecordedTrial(
            trial=int(trial),
            dist_sup=sup,
            dist_l1=group['dist_l1'].to_numpy(dtype=float),
            converged=bool(sup[-1] < convergence_tol),
        ))
    logger.info(f"Read {len(records)} trial(s) from {path}")
    return records
