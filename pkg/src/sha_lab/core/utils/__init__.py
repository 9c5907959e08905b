"""Shared helpers: seeded RNG streams, hashing and prime utilities."""

from .hashing import canonical_json, sha256_hex
from .primes import FIRST_100_PRIMES, is_prime
from .rng import U64_MAX, make_rng, round_half_away

__all__ = [
    "FIRST_100_PRIMES",
    "U64_MAX",
    "canonical_json",
    "is_prime",
    "make_rng",
    "round_half_away",
    "sha256_hex",
]
