"""BSD-consistent synthetic curve generator.

Features are drawn from fixed log ranges and the special value is then solved
from the BSD formula, so ``compute_sha_from_bsd`` reproduces the requested
|Sha| up to floating-point rounding:

    log Omega    ~ U[-8, 2]
    log Reg      ~ U[-3, 6]   (Reg = 1 exactly when rank = 0)
    log prod c_p ~ U[0, 8]    (rounded to a positive integer)
    torsion      ~ U{1..16}
"""

import math
from collections.abc import Mapping, Sequence

import numpy as np

from ..core.exceptions import ConfigError, InvalidClassSpecError
from ..core.schemas.curves import CurveRecord, Dataset, is_perfect_square
from ..core.schemas.experiments import SyntheticSpec
from ..core.utils.primes import FIRST_100_PRIMES, is_prime
from ..core.utils.rng import make_rng, round_half_away
from ..observability.logger import get_logger

logger = get_logger(__name__)

LOG_PERIOD_RANGE = (-8.0, 2.0)
LOG_REGULATOR_RANGE = (-3.0, 6.0)
LOG_TAMAGAWA_RANGE = (0.0, 8.0)
TORSION_RANGE = (1, 16)
_PRIME_ATTEMPTS = 10_000


def allocate_counts(n: int, class_spec: Mapping[int, float]) -> dict[int, int]:
    """Split ``n`` over the classes by largest remainder of the weights.

    Raises:
        InvalidClassSpecError: Empty spec, non-square class or non-positive weight
    """
    if not class_spec:
        raise InvalidClassSpecError("class_spec must name at least one |Sha| value")
    for value, weight in class_spec.items():
        if not is_perfect_square(value):
            raise InvalidClassSpecError(
                f"|Sha| class {value} is not a perfect square", {"value": value}
            )
        if not weight > 0:
            raise InvalidClassSpecError(
                f"weight for class {value} must be positive, got {weight}", {"value": value}
            )

    total = float(sum(class_spec.values()))
    exact = {value: n * weight / total for value, weight in class_spec.items()}
    counts = {value: math.floor(share) for value, share in exact.items()}
    leftover = n - sum(counts.values())
    # Ties go to the class listed first.
    by_remainder = sorted(exact, key=lambda v: exact[v] - counts[v], reverse=True)
    for value in by_remainder[:leftover]:
        counts[value] += 1
    return counts


def _draw_conductor(
    rng: np.random.Generator, low: int, high: int, prime_only: bool
) -> int:
    if not prime_only:
        return int(rng.integers(low, high + 1))
    for _ in range(_PRIME_ATTEMPTS):
        candidate = int(rng.integers(low, high + 1))
        if is_prime(candidate):
            return candidate
    raise ConfigError(f"No prime conductor found in [{low}, {high}]")


def _draw_ap(rng: np.random.Generator) -> tuple[int, ...]:
    # Hasse bound |a_p| <= 2 sqrt(p)
    bounds = [math.isqrt(4 * p) for p in FIRST_100_PRIMES]
    return tuple(int(rng.integers(-b, b + 1)) for b in bounds)


def synthesize_dataset(
    n: int,
    class_spec: Mapping[int, float],
    seed: int = 0,
    *,
    include_ap: bool = False,
    rank_weights: Sequence[float] = (0.6, 0.3, 0.1),
    conductor_min: int = 11,
    conductor_max: int = 500_000,
    prime_conductor: bool = False,
    label_prefix: str = "syn",
) -> Dataset:
    """Generate ``n`` records whose BSD features reproduce their |Sha| exactly.

    Args:
        n: Number of records
        class_spec: |Sha| value -> relative weight (e.g. ``{4: 50, 9: 50}``)
        seed: 64-bit seed; the same arguments always give the same dataset
        include_ap: Also draw a_p values within the Hasse bound
        rank_weights: Probability weights for ranks 0, 1, 2, ...

    Raises:
        InvalidClassSpecError: A class value is not a perfect square
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    if conductor_min > conductor_max:
        raise ConfigError("conductor_min exceeds conductor_max")
    counts = allocate_counts(n, class_spec)

    rng = make_rng(seed, "synthetic")
    sha_values = np.repeat(
        np.array(list(counts), dtype=np.int64), np.array(list(counts.values()), dtype=np.int64)
    )
    rng.shuffle(sha_values)
    rank_p = np.asarray(rank_weights, dtype=np.float64)
    rank_p = rank_p / rank_p.sum()

    width = len(str(n - 1))
    records: list[CurveRecord] = []
    for i, sha in enumerate(sha_values):
        rank = int(rng.choice(len(rank_p), p=rank_p))
        real_period = math.exp(rng.uniform(*LOG_PERIOD_RANGE))
        log_reg = rng.uniform(*LOG_REGULATOR_RANGE)
        regulator = 1.0 if rank == 0 else math.exp(log_reg)
        tamagawa = max(1, round_half_away(math.exp(rng.uniform(*LOG_TAMAGAWA_RANGE))))
        torsion = int(rng.integers(TORSION_RANGE[0], TORSION_RANGE[1] + 1))
        special_value = int(sha) * real_period * regulator * tamagawa / (torsion * torsion)
        conductor = _draw_conductor(rng, conductor_min, conductor_max, prime_conductor)
        ap_values = _draw_ap(rng) if include_ap else None

        records.append(
            CurveRecord(
                label=f"{label_prefix}.{i:0{width}d}",
                conductor=conductor,
                rank=rank,
                torsion_order=torsion,
                real_period=real_period,
                regulator=regulator,
                tamagawa_product=tamagawa,
                special_value=special_value,
                sha_order=int(sha),
                ap_values=ap_values,
            )
        )

    logger.info("Synthesized dataset", n=n, seed=seed, classes=counts, include_ap=include_ap)
    return Dataset(records=tuple(records), source=f"synthetic:seed={seed}", seed=seed)


def synthesize_from_spec(spec: SyntheticSpec) -> Dataset:
    return synthesize_dataset(
        spec.n,
        spec.class_spec,
        spec.seed,
        include_ap=spec.include_ap,
        rank_weights=spec.rank_weights,
        conductor_min=spec.conductor_min,
        conductor_max=spec.conductor_max,
        prime_conductor=spec.prime_conductor,
        label_prefix=spec.label_prefix,
    )
