"""Deterministic RNG stream derivation.

Every stochastic component draws from its own generator, derived from the
master seed plus a role tag and integer coordinates (dimension, generation,
probe index, run index).  Two calls with the same keys always yield the same
stream, independent of call order or parallel scheduling.
"""

import numpy as np

# Role tags keep the key spaces of different consumers disjoint.
ROLE_INIT = 0
ROLE_PROBE = 1
ROLE_ADVANCE = 2
ROLE_RUN = 3
ROLE_TRIAL = 4


def stream(*keys: int) -> np.random.Generator:
    """Return a PCG64 generator keyed by the given non-negative integers."""
    for k in keys:
        if k < 0:
            raise ValueError(f"rng stream keys must be non-negative, got {k}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(keys)))


def derive_seed(*keys: int) -> int:
    """Deterministically derive a fresh 32-bit master seed from key integers."""
    for k in keys:
        if k < 0:
            raise ValueError(f"rng stream keys must be non-negative, got {k}")
    return int(np.random.SeedSequence(keys).generate_state(1, np.uint32)[0])
