"""Seeded random streams.

Every stochastic operation derives its generator from an explicit 64-bit seed
plus a tuple of stream keys, so independent draws (shuffles, dropout masks,
per-class sampling) never share state and stay reproducible across runs.
"""

import hashlib
import math

import numpy as np

U64_MAX = 2**64 - 1


def _stream_word(key: int | str) -> int:
    if isinstance(key, int):
        return key & U64_MAX
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def make_rng(seed: int, *stream: int | str) -> np.random.Generator:
    """Create a PCG64 generator for ``seed`` and the given stream keys."""
    if not 0 <= seed <= U64_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    entropy = [seed, *(_stream_word(key) for key in stream)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def round_half_away(value: float) -> int:
    """Round to the nearest integer, ties away from zero.

    The fraction is compared against 0.5 directly; adding 0.5 first can round
    up in floating point (0.49999999999999994, odd values above 2**52).
    """
    magnitude = abs(value)
    whole = math.floor(magnitude)
    if magnitude - whole >= 0.5:
        whole += 1
    return int(math.copysign(whole, value))
