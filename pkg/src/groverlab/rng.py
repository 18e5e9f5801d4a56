"""Seeded, reproducible random streams.

The package standardizes on numpy's PCG64 generator.  A scalar 64-bit seed
fully determines a stream, and independent per-trial substreams are derived
by hashing (master_seed, trial_index) through numpy's SeedSequence, so a
batch of trials gives identical results whether it runs serially or on a
worker pool.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int | None) -> np.random.Generator:
    """Return a PCG64 generator for the given scalar seed (None: fresh entropy)."""
    return np.random.default_rng(seed)


def derive_seed(master_seed: int, trial_index: int) -> int:
    """Mix (master_seed, trial_index) into a reproducible scalar trial seed."""
    ss = np.random.SeedSequence([int(master_seed), int(trial_index)])
    return int(ss.generate_state(1, np.uint64)[0])


def as_generator(rng: np.random.Generator | int | None) -> tuple[np.random.Generator, int | None]:
    """Accept a generator or a scalar seed; return (generator, recorded_seed).

    The recorded seed is the integer that reproduces the stream, or None when
    an already-constructed generator (or fresh entropy) was supplied.
    """
    if isinstance(rng, np.random.Generator):
        return rng, None
    if rng is None:
        return np.random.default_rng(), None
    seed = int(rng)
    return np.random.default_rng(seed), seed
