"""Dataset -> FeatureMatrix conversion."""

import math
from collections.abc import Sequence
from typing import Optional

import numpy as np

from ..core.enums import TargetKind
from ..core.exceptions import MissingFeatureError
from ..core.schemas.curves import CurveRecord, Dataset
from ..core.schemas.features import FeatureSpec
from ..core.utils.primes import FIRST_100_PRIMES
from ..observability.logger import get_logger
from .matrix import FeatureMatrix

logger = get_logger(__name__)

AP_FEATURE_NAMES: tuple[str, ...] = tuple(f"ap_{p}" for p in FIRST_100_PRIMES)


def _sha(rec: CurveRecord) -> int:
    if rec.sha_order is None:
        raise MissingFeatureError("sha_order", rec.label)
    return rec.sha_order


def _target_value(rec: CurveRecord, target: TargetKind, class_index: dict[int, int]) -> float:
    if target == TargetKind.CLASS_INDEX:
        sha = _sha(rec)
        if sha not in class_index:
            raise MissingFeatureError(f"class for sha_order={sha}", rec.label)
        return float(class_index[sha])
    if target == TargetKind.SQRT_SHA:
        return math.sqrt(_sha(rec))
    if target == TargetKind.TRIVIAL_SHA:
        return 1.0 if _sha(rec) == 1 else 0.0
    if target == TargetKind.LOG_SHA:
        return math.log(_sha(rec))
    raise ValueError(f"no target value for {target}")


def infer_classes(*datasets: Dataset) -> tuple[int, ...]:
    """Sorted distinct |Sha| values present in the datasets."""
    values = {rec.sha_order for ds in datasets for rec in ds.records if rec.sha_order is not None}
    return tuple(sorted(values))


def build_matrix(
    ds: Dataset,
    spec: FeatureSpec,
    target: TargetKind = TargetKind.CLASS_INDEX,
    classes: Optional[Sequence[int]] = None,
) -> FeatureMatrix:
    """Build the raw (untransformed) design matrix for ``spec``.

    Columns follow ``spec.features`` order, then ``ap_2..ap_541`` when
    ``spec.include_ap`` is set.

    Args:
        ds: Source dataset
        spec: Columns to build
        target: What y holds; ``TargetKind.NONE`` leaves y unset
        classes: |Sha| values mapped to class indices 0, 1, ...; inferred
            from ``ds`` when omitted

    Raises:
        MissingFeatureError: A requested feature (or the target) is absent on a record
    """
    names = list(spec.names)
    if spec.include_ap:
        names.extend(AP_FEATURE_NAMES)

    class_values: tuple[int, ...] = ()
    if target == TargetKind.CLASS_INDEX:
        class_values = tuple(classes) if classes is not None else infer_classes(ds)
    class_index = {value: i for i, value in enumerate(class_values)}

    n = len(ds)
    x = np.empty((n, len(names)), dtype=np.float64)
    y = np.empty(n, dtype=np.float64) if target != TargetKind.NONE else None
    for i, rec in enumerate(ds.records):
        for j, name in enumerate(spec.names):
            value = rec.feature(name)
            if value is None:
                raise MissingFeatureError(name, rec.label)
            x[i, j] = value
        if spec.include_ap:
            if rec.ap_values is None:
                raise MissingFeatureError("ap_values", rec.label)
            x[i, len(spec.names) :] = rec.ap_values
        if y is not None:
            y[i] = _target_value(rec, target, class_index)

    logger.debug("Built feature matrix", rows=n, columns=len(names), target=target.value)
    return FeatureMatrix(
        x=x,
        feature_names=tuple(names),
        y=y,
        labels=tuple(ds.labels),
        target=target,
        classes=class_values,
    )
