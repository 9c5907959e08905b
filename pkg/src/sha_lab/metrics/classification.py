"""Accuracy, confusion matrices and Matthews correlation."""

import math
from collections.abc import Sequence
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.exceptions import EmptyInputError, LengthMismatchError


def _aligned(pred: ArrayLike, truth: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    p = np.asarray(pred, dtype=np.float64).reshape(-1)
    t = np.asarray(truth, dtype=np.float64).reshape(-1)
    if p.shape != t.shape:
        raise LengthMismatchError(p.size, t.size)
    if p.size == 0:
        raise EmptyInputError("metric requested on zero rows")
    return p, t


def accuracy(pred: ArrayLike, truth: ArrayLike) -> float:
    """Fraction of positions where prediction equals truth."""
    p, t = _aligned(pred, truth)
    return int(np.count_nonzero(p == t)) / p.size


def confusion_matrix(
    pred: ArrayLike, truth: ArrayLike, labels: Optional[Sequence[float]] = None
) -> tuple[list[float], NDArray[np.int64]]:
    """Counts with rows = truth and columns = prediction.

    ``labels`` defaults to the sorted union of observed values.
    """
    p, t = _aligned(pred, truth)
    values = sorted(set(p.tolist()) | set(t.tolist())) if labels is None else list(labels)
    index = {v: i for i, v in enumerate(values)}
    matrix = np.zeros((len(values), len(values)), dtype=np.int64)
    for truth_value, pred_value in zip(t.tolist(), p.tolist()):
        matrix[index[truth_value], index[pred_value]] += 1
    return values, matrix


def mcc(pred: ArrayLike, truth: ArrayLike, positive: float = 1.0) -> float:
    """Binary Matthews correlation; 0 when any marginal count is 0."""
    p, t = _aligned(pred, truth)
    pp, tp_mask = p == positive, t == positive
    tp = int(np.count_nonzero(pp & tp_mask))
    tn = int(np.count_nonzero(~pp & ~tp_mask))
    fp = int(np.count_nonzero(pp & ~tp_mask))
    fn = int(np.count_nonzero(~pp & tp_mask))
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom == 0:
        return 0.0
    value = (tp * tn - fp * fn) / math.sqrt(denom)
    return max(-1.0, min(1.0, value))


def multiclass_mcc(pred: ArrayLike, truth: ArrayLike) -> float:
    """Gorodkin's K-class generalization of MCC; 0 on a zero denominator."""
    _, c = confusion_matrix(pred, truth)
    s = int(c.sum())
    correct = int(np.trace(c))
    p_k = c.sum(axis=0)
    t_k = c.sum(axis=1)
    numerator = correct * s - int(p_k @ t_k)
    denom = (s * s - int(p_k @ p_k)) * (s * s - int(t_k @ t_k))
    if denom == 0:
        return 0.0
    return max(-1.0, min(1.0, numerator / math.sqrt(denom)))


def binarize_trivial(sha_values: ArrayLike) -> NDArray[np.float64]:
    """1.0 where |Sha| = 1 (trivial), else 0.0."""
    v = np.asarray(sha_values, dtype=np.float64)
    return (v == 1.0).astype(np.float64)
