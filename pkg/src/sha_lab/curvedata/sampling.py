"""Record selection, class balancing and seeded train/test splitting."""

from collections.abc import Sequence
from typing import Any

import numpy as np

from ..core.exceptions import DegenerateSplitError, EmptyClassError
from ..core.schemas.curves import CurveRecord, Dataset, SplitSpec
from ..core.schemas.experiments import ClassFilter
from ..core.utils.primes import is_prime
from ..core.utils.rng import make_rng, round_half_away
from ..observability.logger import get_logger

logger = get_logger(__name__)


def _class_value(rec: CurveRecord, class_field: str) -> Any:
    return getattr(rec, class_field, None)


def balanced_subset(
    ds: Dataset, class_field: str, classes: Sequence[Any], seed: int
) -> Dataset:
    """Equal-size random subset over ``classes``.

    Every class is down-sampled without replacement to the size of the
    smallest one. Selected records keep their input order.

    Raises:
        EmptyClassError: A requested class has no records
    """
    members: list[list[int]] = []
    for value in classes:
        idx = [i for i, rec in enumerate(ds.records) if _class_value(rec, class_field) == value]
        if not idx:
            raise EmptyClassError(class_field, value)
        members.append(idx)

    per_class = min(len(idx) for idx in members)
    chosen: list[int] = []
    for position, idx in enumerate(members):
        rng = make_rng(seed, "balance", position)
        picked = rng.choice(np.asarray(idx), size=per_class, replace=False)
        chosen.extend(int(i) for i in picked)
    chosen.sort()

    logger.info(
        "Built balanced subset",
        class_field=class_field,
        classes=list(classes),
        per_class=per_class,
        total=len(chosen),
    )
    return ds.with_records([ds.records[i] for i in chosen])


def train_test_split(ds: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Shuffle with the split seed, then cut off round(test_fraction * n) test rows.

    Raises:
        DegenerateSplitError: Fewer than 2 records, or either side would be empty
    """
    n = len(ds)
    if n < 2:
        raise DegenerateSplitError(f"Cannot split a dataset of {n} record(s)")
    n_test = round_half_away(spec.test_fraction * n)
    if n_test <= 0 or n_test >= n:
        raise DegenerateSplitError(
            f"test_fraction {spec.test_fraction} leaves an empty side for n={n}",
            {"n": n, "n_test": n_test},
        )
    order = make_rng(spec.seed, "split").permutation(n)
    test = [ds.records[i] for i in order[:n_test]]
    train = [ds.records[i] for i in order[n_test:]]
    return (
        ds.with_records(train, source=f"{ds.source}#train"),
        ds.with_records(test, source=f"{ds.source}#test"),
    )


def filter_records(ds: Dataset, flt: ClassFilter) -> Dataset:
    """Apply the rank/conductor/|Sha| predicates of ``flt`` (no balancing)."""

    def keep(rec: CurveRecord) -> bool:
        if flt.sha_orders is not None and rec.sha_order not in flt.sha_orders:
            return False
        if flt.min_rank is not None and rec.rank < flt.min_rank:
            return False
        if flt.max_rank is not None and rec.rank > flt.max_rank:
            return False
        if flt.min_conductor is not None or flt.max_conductor is not None:
            if rec.conductor is None:
                return False
            if flt.min_conductor is not None and rec.conductor < flt.min_conductor:
                return False
            if flt.max_conductor is not None and rec.conductor > flt.max_conductor:
                return False
        if flt.prime_conductor_only and (rec.conductor is None or not is_prime(rec.conductor)):
            return False
        return True

    kept = [rec for rec in ds.records if keep(rec)]
    if flt.top_sha_values is not None:
        values = sorted({rec.sha_order for rec in kept if rec.sha_order is not None}, reverse=True)
        top = set(values[: flt.top_sha_values])
        kept = [rec for rec in kept if rec.sha_order in top]
    return ds.with_records(kept)


def apply_class_filter(ds: Dataset, flt: ClassFilter, seed: int) -> Dataset:
    """Filter, then balance over ``flt.sha_orders`` when requested."""
    filtered = filter_records(ds, flt)
    logger.info("Filtered records", before=len(ds), after=len(filtered))
    if flt.balance and flt.sha_orders is not None and len(flt.sha_orders) > 1:
        return balanced_subset(filtered, "sha_order", flt.sha_orders, seed)
    return filtered
