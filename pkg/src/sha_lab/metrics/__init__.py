"""Evaluation metrics and report builders."""

from .classification import accuracy, binarize_trivial, confusion_matrix, mcc, multiclass_mcc
from .regression import (
    default_thresholds,
    round_sqrt_sha,
    round_sqrt_sha_array,
    threshold_accuracy_curve,
)
from .report import evaluate_classification, evaluate_regression, naive_trivial_baseline

__all__ = [
    "accuracy",
    "binarize_trivial",
    "confusion_matrix",
    "default_thresholds",
    "evaluate_classification",
    "evaluate_regression",
    "mcc",
    "multiclass_mcc",
    "naive_trivial_baseline",
    "round_sqrt_sha",
    "round_sqrt_sha_array",
    "threshold_accuracy_curve",
]
