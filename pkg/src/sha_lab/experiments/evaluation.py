"""Shared scoring helpers and feature-set definitions for the experiment runners."""

from collections.abc import Sequence
from typing import Optional

from ..core.enums import FeatureName, RegressionFeatureSet
from ..core.interfaces.model import IModel
from ..core.schemas.plots import PlotSeries
from ..core.schemas.reports import EvaluationReport
from ..features.matrix import FeatureMatrix
from ..metrics.report import evaluate_classification, evaluate_regression

REGRESSION_FEATURE_SETS: dict[RegressionFeatureSet, list[FeatureName]] = {
    RegressionFeatureSet.ALL_BSD: [
        FeatureName.SPECIAL_VALUE,
        FeatureName.TORSION_ORDER,
        FeatureName.REAL_PERIOD,
        FeatureName.REGULATOR,
        FeatureName.TAMAGAWA_PRODUCT,
    ],
    RegressionFeatureSet.REGULATOR_TO_RANK: [
        FeatureName.SPECIAL_VALUE,
        FeatureName.TORSION_ORDER,
        FeatureName.REAL_PERIOD,
        FeatureName.RANK,
        FeatureName.TAMAGAWA_PRODUCT,
    ],
    RegressionFeatureSet.NO_REGULATOR_NO_RANK: [
        FeatureName.SPECIAL_VALUE,
        FeatureName.TORSION_ORDER,
        FeatureName.REAL_PERIOD,
        FeatureName.TAMAGAWA_PRODUCT,
    ],
}


def classification_report(model: IModel, m: FeatureMatrix) -> EvaluationReport:
    return evaluate_classification(model.predict(m.x), m.require_y())


def regression_report(
    model: IModel, m: FeatureMatrix, thresholds: Optional[Sequence[float]] = None
) -> EvaluationReport:
    """Score a sqrt|Sha| regressor after rounding its outputs."""
    return evaluate_regression(model.predict(m.x), m.require_y(), thresholds)


def threshold_series(name: str, report: EvaluationReport) -> PlotSeries:
    """Accuracy-versus-threshold line for one report (absent points stay None)."""
    points = report.threshold_curve or []
    return PlotSeries(
        name=name,
        x=[p.threshold for p in points],
        y=[p.accuracy for p in points],
    )
