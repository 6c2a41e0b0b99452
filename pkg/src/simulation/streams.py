"""
Reproducible random streams.

Every stream is numpy's Philox4x64 counter-based generator keyed by a
SeedSequence of (seed, index). Streams with distinct indices are
independent, and a stream depends only on its key, not on which thread or
in which order it is drawn.
"""

import numpy as np

from src.errors import DomainError

RNG_ALGORITHM = 'Philox4x64-10 keyed by numpy SeedSequence(seed, spawn_key=(index,))'

_SEED_LIMIT = 2 ** 64


def validate_seed(seed: int) -> int:
    """Return seed as int, raising DomainError unless 0 <= seed < 2**64."""
    if isinstance(seed, bool) or int(seed) != seed:
        raise DomainError('seed', f"must be an integer (got {seed!r})")
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise DomainError('seed', f"must be an unsigned 64-bit integer (got {seed})")
    return seed


def substream(seed: int, index: int) -> np.random.Generator:
    """
    Generator for replication `index` of the experiment seeded with `seed`.

    Args:
        seed: Unsigned 64-bit experiment seed
        index: Non-negative replication index

    Returns:
        numpy Generator backed by Philox
    """
    seed = validate_seed(seed)
    if index < 0:
        raise DomainError('index', f"must be >= 0 (got {index})")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(sequence))
