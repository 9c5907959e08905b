"""Build EvaluationReports from predictions."""

from collections.abc import Sequence
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.schemas.reports import EvaluationReport
from .classification import binarize_trivial, confusion_matrix, mcc, multiclass_mcc
from .regression import round_sqrt_sha_array, threshold_accuracy_curve


def _report(
    pred: NDArray[np.float64],
    truth: NDArray[np.float64],
    binary_mcc: float,
    multi: Optional[float],
) -> EvaluationReport:
    labels, matrix = confusion_matrix(pred, truth)
    n = int(matrix.sum())
    return EvaluationReport(
        accuracy=int(np.trace(matrix)) / n,
        mcc=binary_mcc,
        mcc_multiclass=multi,
        labels=[int(v) for v in labels],
        confusion=matrix.tolist(),
        n=n,
    )


def evaluate_classification(pred: ArrayLike, truth: ArrayLike) -> EvaluationReport:
    """Report for 0/1 class predictions (class 1 positive)."""
    p = np.asarray(pred, dtype=np.float64).reshape(-1)
    t = np.asarray(truth, dtype=np.float64).reshape(-1)
    return _report(p, t, mcc(p, t, positive=1.0), None)


def evaluate_regression(
    pred_sqrt: ArrayLike,
    truth_sqrt: ArrayLike,
    thresholds: Optional[Sequence[float]] = None,
) -> EvaluationReport:
    """Round sqrt|Sha| predictions and score them in |Sha| space.

    ``mcc`` is trivial-vs-nontrivial; ``mcc_multiclass`` compares exact
    |Sha| values. Confusion labels are |Sha| values.
    """
    rounded = round_sqrt_sha_array(pred_sqrt)
    truth = round_sqrt_sha_array(truth_sqrt)
    sha_pred = (rounded * rounded).astype(np.float64)
    sha_truth = (truth * truth).astype(np.float64)
    report = _report(
        sha_pred,
        sha_truth,
        mcc(binarize_trivial(sha_pred), binarize_trivial(sha_truth)),
        multiclass_mcc(sha_pred, sha_truth),
    )
    curve = threshold_accuracy_curve(rounded, truth_sqrt, thresholds)
    return report.model_copy(update={"threshold_curve": curve})


def naive_trivial_baseline(truth_sqrt: ArrayLike) -> EvaluationReport:
    """Score the constant 'every Sha is trivial' predictor."""
    truth = np.asarray(truth_sqrt, dtype=np.float64).reshape(-1)
    return evaluate_regression(np.ones_like(truth), truth)
