"""Rounding of sqrt|Sha| predictions and threshold-restricted accuracy."""

import math
from collections.abc import Sequence
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.exceptions import LengthMismatchError, NonFiniteError
from ..core.schemas.reports import ThresholdPoint
from ..core.utils.rng import round_half_away


def round_sqrt_sha(prediction: float) -> int:
    """Nearest positive integer (ties away from zero); |Sha| is its square."""
    if not math.isfinite(prediction):
        raise NonFiniteError(f"cannot round non-finite prediction {prediction!r}")
    return max(1, round_half_away(prediction))


def round_sqrt_sha_array(predictions: ArrayLike) -> NDArray[np.int64]:
    p = np.asarray(predictions, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(p)):
        raise NonFiniteError("predictions contain NaN or infinite values")
    magnitude = np.abs(p)
    whole = np.floor(magnitude)
    rounded = np.sign(p) * np.where(magnitude - whole >= 0.5, whole + 1.0, whole)
    return np.maximum(rounded, 1.0).astype(np.int64)


def default_thresholds(truth_sqrt: ArrayLike) -> list[float]:
    """1, 2, ..., max true sqrt|Sha|."""
    t = np.asarray(truth_sqrt, dtype=np.float64)
    top = int(np.floor(t.max())) if t.size else 1
    return [float(v) for v in range(1, max(top, 1) + 1)]


def threshold_accuracy_curve(
    pred_sqrt: ArrayLike,
    truth_sqrt: ArrayLike,
    thresholds: Optional[Sequence[float]] = None,
) -> list[ThresholdPoint]:
    """Accuracy of rounded predictions on rows with ``truth_sqrt >= t``.

    Empty subsets report ``accuracy=None`` with support 0.
    """
    p = round_sqrt_sha_array(pred_sqrt)
    t = np.asarray(truth_sqrt, dtype=np.float64).reshape(-1)
    if p.size != t.size:
        raise LengthMismatchError(p.size, t.size)
    truth_int = round_sqrt_sha_array(t) if t.size else t.astype(np.int64)
    points: list[ThresholdPoint] = []
    for threshold in thresholds if thresholds is not None else default_thresholds(t):
        mask = t >= threshold
        support = int(np.count_nonzero(mask))
        acc = float(np.count_nonzero(p[mask] == truth_int[mask]) / support) if support else None
        points.append(ThresholdPoint(threshold=float(threshold), accuracy=acc, support=support))
    return points
