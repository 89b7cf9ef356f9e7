"""
Seeded, splittable random streams.

All randomness goes through counter-based Philox generators so that traces
are reproducible across platforms and worker processes.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Return a Philox-backed generator for an integer seed or seed sequence."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def spawn_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Split one seed into `count` independent child sequences."""
    return np.random.SeedSequence(int(seed)).spawn(count)
