"""
ftxl_lab.feedback.rng
~~~~~~~~~~~~~~~~~~~~~

Reproducible random streams: one counter-based substream per trial.
"""

import numpy as np


def trial_seed_sequence(master_seed: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),))


def trial_generator(master_seed: int, trial: int) -> np.random.Generator:
    """
    Philox generator keyed by (master seed, trial index).

    Trials get independent streams no matter which worker runs them or in
    what order, so a batch is reproducible from its master seed alone.
    """
    return np.random.Generator(np.random.Philox(trial_seed_sequence(master_seed, trial)))
