"""
ftxl_lab.harness.summary
~~~~~~~~~~~~~~~~~~~~~~~~

Per-step statistics across trials.
"""

from dataclasses import dataclass
from typing import List

import numpy as np
import pandas as pd

from ftxl_lab.errors import InvalidConfigurationError


@dataclass
class Summary:
    """Mean and population standard deviation of the distances at every step."""

    steps: np.ndarray
    mean_l1: np.ndarray
    std_l1: np.ndarray
    mean_sup: np.ndarray
    std_sup: np.ndarray
    frac_converged: float
    trials: int

    @property
    def final_mean_l1(self) -> float:
        return float(self.mean_l1[-1])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'step': self.steps,
            'mean_l1': self.mean_l1,
            'std_l1': self.std_l1,
            'frac_converged': self.frac_converged,
        })


def aggregate(records: List) -> Summary:
    """
    Mean ± std band per step and the fraction of converged trials.

    Raises:
        InvalidConfigurationError: no records, or records of different lengths.
    """
    if not records:
        raise InvalidConfigurationError("Nothing to aggregate")
    lengths = {len(r.dist_l1) for r in records}
    if len(lengths) != 1:
        raise InvalidConfigurationError(f"Records have different horizons: {sorted(lengths)}")

    l1 = np.vstack([r.dist_l1 for r in records])
    sup = np.vstack([r.dist_sup for r in records])
    return Summary(
        steps=np.arange(1, l1.shape[1] + 1),
        mean_l1=l1.mean(axis=0),
        std_l1=l1.std(axis=0),
        mean_sup=sup.mean(axis=0),
        std_sup=sup.std(axis=0),
        frac_converged=sum(bool(r.converged) for r in records) / len(records),
        trials=len(records),
    )
