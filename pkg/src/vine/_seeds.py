"""Deterministic seed derivation.

Every random draw in the package is keyed by a 64-bit seed derived from the
run seed and a few integer coordinates (generation, index, stream tag).
Derivation is a splitmix-style hash, so seeds are evaluation-order
independent: any evaluation can be re-keyed in isolation.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15

# Stream tags keep unrelated draws on disjoint seed streams.
STREAM_NOISE = 1
STREAM_ROLLOUT = 2
STREAM_GA_SELECT = 3
STREAM_GA_MUTATE = 4
STREAM_GA_STEP = 5
STREAM_INIT = 6
STREAM_REPLAY = 7
STREAM_JITTER = 8
STREAM_TSNE_INIT = 9

# Pseudo-index for the parent evaluation inside a generation.
PARENT_INDEX = -1


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Hash a tuple of integers into a 64-bit unsigned seed."""
    acc = 0
    for part in parts:
        acc = (acc + _GOLDEN + (int(part) & _MASK64)) & _MASK64
        acc = _mix(acc)
    return acc


def rng_from(seed: int) -> np.random.Generator:
    """The one generator constructor used across the package."""
    return np.random.default_rng(seed)
