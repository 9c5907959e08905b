"""Column transforms: log, z-score scaling, feature deletion, and the prepare pipeline."""

from collections.abc import Iterable, Sequence
from dataclasses import replace
from typing import Optional

import numpy as np

from ..core.enums import FeatureName, TargetKind
from ..core.exceptions import NonPositiveEntryError
from ..core.schemas.curves import Dataset
from ..core.schemas.features import FeatureSpec
from ..observability.logger import get_logger
from .builder import AP_FEATURE_NAMES, build_matrix, infer_classes
from .matrix import FeatureMatrix, Scaler

logger = get_logger(__name__)

# Zero for rank-0 curves, so log1p instead of log.
LOG1P_FEATURES = frozenset({FeatureName.RANK.value})


def log_transform(m: FeatureMatrix, spec: FeatureSpec) -> FeatureMatrix:
    """Natural log of every column flagged in ``spec`` (rank via log1p).

    Raises:
        NonPositiveEntryError: A flagged column holds a value <= 0
    """
    x = m.x.copy()
    for name, flagged in spec.log_flags().items():
        if not flagged or name not in m.feature_names:
            continue
        j = m.index_of(name)
        col = x[:, j]
        if name in LOG1P_FEATURES:
            bad = np.flatnonzero(col < 0)
            if bad.size:
                raise NonPositiveEntryError(int(bad[0]), name, float(col[bad[0]]))
            x[:, j] = np.log1p(col)
        else:
            bad = np.flatnonzero(col <= 0)
            if bad.size:
                raise NonPositiveEntryError(int(bad[0]), name, float(col[bad[0]]))
            x[:, j] = np.log(col)
    return m.with_x(x)


def fit_scaler(m: FeatureMatrix, exclude: Iterable[str] = ()) -> Scaler:
    """Population (1/n) mean and std per column.

    Zero-variance columns are flagged constant and passed through.
    """
    excluded = set(exclude)
    mean = m.x.mean(axis=0)
    std = m.x.std(axis=0)
    constant = std == 0.0
    passthrough = constant | np.array([name in excluded for name in m.feature_names], dtype=bool)
    mean = np.where(passthrough, 0.0, mean)
    std = np.where(passthrough, 1.0, std)
    if constant.any():
        logger.info(
            "Constant columns passed through unscaled",
            columns=[n for n, c in zip(m.feature_names, constant) if c],
        )
    return Scaler(columns=m.feature_names, mean=mean, std=std, constant=constant)


def apply_scaler(m: FeatureMatrix, scaler: Scaler) -> FeatureMatrix:
    return m.with_x(scaler.transform(m.x), scaler=scaler)


def fit_apply_scaler(
    train: FeatureMatrix, test: FeatureMatrix, exclude: Iterable[str] = ()
) -> tuple[FeatureMatrix, FeatureMatrix, Scaler]:
    """Fit on ``train`` only and scale both matrices with those statistics."""
    scaler = fit_scaler(train, exclude)
    return apply_scaler(train, scaler), apply_scaler(test, scaler), scaler


def drop_feature(m: FeatureMatrix, name: str) -> FeatureMatrix:
    """Remove one named column, keeping the others in order.

    Raises:
        UnknownFeatureError: ``name`` is not a column of ``m``
    """
    j = m.index_of(name)
    names = m.feature_names[:j] + m.feature_names[j + 1 :]
    scaler = m.scaler.without(j) if m.scaler is not None else None
    return replace(m, x=np.delete(m.x, j, axis=1), feature_names=names, scaler=scaler)


def prepare_features(
    train_ds: Dataset,
    test_ds: Dataset,
    spec: FeatureSpec,
    target: TargetKind = TargetKind.CLASS_INDEX,
    classes: Optional[Sequence[int]] = None,
) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Build -> log -> standardize, with scaling statistics from ``train_ds`` only."""
    if target == TargetKind.CLASS_INDEX and classes is None:
        classes = infer_classes(train_ds, test_ds)
    train = log_transform(build_matrix(train_ds, spec, target, classes), spec)
    test = log_transform(build_matrix(test_ds, spec, target, classes), spec)
    if spec.standardize:
        exclude = () if spec.standardize_ap else AP_FEATURE_NAMES
        train, test, _ = fit_apply_scaler(train, test, exclude)
    return train, test
