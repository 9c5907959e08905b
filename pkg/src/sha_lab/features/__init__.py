"""Feature engineering: matrices, log transforms, scaling and ablation views."""

from .builder import AP_FEATURE_NAMES, build_matrix, infer_classes
from .matrix import FeatureMatrix, Scaler
from .transforms import (
    apply_scaler,
    drop_feature,
    fit_apply_scaler,
    fit_scaler,
    log_transform,
    prepare_features,
)

__all__ = [
    "AP_FEATURE_NAMES",
    "FeatureMatrix",
    "Scaler",
    "apply_scaler",
    "build_matrix",
    "drop_feature",
    "fit_apply_scaler",
    "fit_scaler",
    "infer_classes",
    "log_transform",
    "prepare_features",
]
