"""Seed-keyed genome constructors.

Training and archive reconstruction must produce identical parameter
vectors, so both go through these functions and nothing else.
"""

from __future__ import annotations

import numpy as np

from ._seeds import rng_from


def perturbation(noise_seed: int, d: int, sign: int = 1) -> np.ndarray:
    """Standard-normal vector keyed by noise_seed, negated when sign is -1."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    eps = rng_from(noise_seed).standard_normal(d)
    return -eps if sign == -1 else eps


def offspring_params(parent: np.ndarray, noise_seed: int, sign: int,
                     noise_stdev: float) -> np.ndarray:
    return parent + noise_stdev * perturbation(noise_seed, parent.shape[0], sign)


def mutate_genome(genome: np.ndarray, mutation_seed: int, stdev: float) -> np.ndarray:
    return genome + stdev * rng_from(mutation_seed).standard_normal(genome.shape[0])
