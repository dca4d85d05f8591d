"""Deterministic random streams.

Every stream is a PCG64 generator seeded from ``(seed, tag, *extra)`` through
numpy's ``SeedSequence``. The tag is hashed with CRC-32 so that each
experiment owns its own stream and adding one never shifts another's draws.
"""

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def check_seed(seed):
    seed = int(seed)
    if seed < 0 or seed > _MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def stream(seed, tag, *extra):
    entropy = [check_seed(seed), zlib.crc32(tag.encode("utf-8"))]
    entropy.extend(int(e) for e in extra)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
