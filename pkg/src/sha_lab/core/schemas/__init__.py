"""Pydantic schemas for the toolkit."""

from .curves import (
    AP_COUNT,
    SCHEMA_VERSION,
    CurveExtras,
    CurveRecord,
    Dataset,
    RowRejection,
    SplitSpec,
    ValidationReport,
    invariant_violations,
    is_perfect_square,
)
from .experiments import (
    ClassFilter,
    DatasetSelector,
    ExperimentConfig,
    LmfdbQuery,
    SyntheticSpec,
)
from .features import FeatureSpec
from .manifest import DatasetFingerprint, RunManifest
from .plots import PlotSeries, PlotSpec
from .reports import AblationCell, AblationResult, EvaluationReport, ThresholdPoint
from .training import GbmParams, LogisticParams, MlpParams, TrainConfig

__all__ = [
    # Curves
    "AP_COUNT",
    "SCHEMA_VERSION",
    "CurveExtras",
    "CurveRecord",
    "Dataset",
    "RowRejection",
    "SplitSpec",
    "ValidationReport",
    "invariant_violations",
    "is_perfect_square",
    # Experiments
    "ClassFilter",
    "DatasetSelector",
    "ExperimentConfig",
    "LmfdbQuery",
    "SyntheticSpec",
    # Features / training
    "FeatureSpec",
    "GbmParams",
    "LogisticParams",
    "MlpParams",
    "TrainConfig",
    # Reports
    "AblationCell",
    "AblationResult",
    "EvaluationReport",
    "ThresholdPoint",
    "DatasetFingerprint",
    "RunManifest",
    "PlotSeries",
    "PlotSpec",
]
