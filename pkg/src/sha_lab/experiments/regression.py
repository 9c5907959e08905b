"""GBM regression on sqrt|Sha| across feature sets and conductor ranges."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

from ..core.enums import (
    BSD_FEATURES,
    EvaluationSet,
    FeatureName,
    ModelKind,
    PlotKind,
    RegressionFeatureSet,
    TargetKind,
    Task,
)
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.curves import Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.features import FeatureSpec
from ..core.schemas.plots import PlotSeries, PlotSpec
from ..core.schemas.reports import EvaluationReport
from ..core.schemas.training import TrainConfig
from ..features.transforms import prepare_features
from ..metrics.report import naive_trivial_baseline
from ..models.factory import ModelFactory
from ..models.gbm import GbmModel, gbm_feature_importance
from ..observability.logger import get_logger
from .datasets import drop_incomplete, load_experiment_data
from .evaluation import REGRESSION_FEATURE_SETS, regression_report, threshold_series
from .manifest import RunRecorder

logger = get_logger(__name__)

ALL_REGRESSION_FEATURES: list[str] = sorted(
    {f.value for features in REGRESSION_FEATURE_SETS.values() for f in features}
)

# Every scalar invariant at once, for the gain ranking.
FULL_REGRESSION_FEATURES: list[FeatureName] = [
    *BSD_FEATURES,
    FeatureName.RANK,
    FeatureName.CONDUCTOR,
]


@dataclass(frozen=True)
class RegressionCell:
    """One trained regressor and its reports on each evaluation set."""

    model: GbmModel
    reports: dict[str, EvaluationReport]
    importance: list[tuple[str, float]]


def fit_regression_cell(
    train: Dataset,
    evaluation: Mapping[str, Dataset],
    features: list[FeatureName],
    base_spec: FeatureSpec,
    train_cfg: TrainConfig,
    thresholds: Optional[Sequence[float]] = None,
    threads: int = 1,
) -> RegressionCell:
    """Fit a sqrt|Sha| GBM on ``train`` and score it on every evaluation set.

    Each evaluation set is transformed with statistics from ``train`` only.
    """
    spec = base_spec.with_features(features)
    model: Optional[GbmModel] = None
    reports: dict[str, EvaluationReport] = {}
    for name, ds in evaluation.items():
        tr, te = prepare_features(train, ds, spec, TargetKind.SQRT_SHA)
        if model is None:
            fitted = ModelFactory.fit(
                ModelKind.GBM, tr, train_cfg, task=Task.REGRESS, threads=threads
            ).model
            assert isinstance(fitted, GbmModel)
            model = fitted
        reports[name] = regression_report(model, te, thresholds)
    assert model is not None, "at least one evaluation set is required"
    return RegressionCell(model=model, reports=reports, importance=gbm_feature_importance(model))


def full_feature_importance(
    train: Dataset, base_spec: FeatureSpec, train_cfg: TrainConfig, threads: int = 1
) -> list[tuple[str, float]]:
    """Gain ranking of a sqrt|Sha| GBM fitted on every scalar invariant.

    Rows without a conductor are left out of this fit only. Returns an empty
    ranking when no row is complete.
    """
    complete = drop_incomplete(train, [f.value for f in FULL_REGRESSION_FEATURES])
    if len(complete) == 0:
        logger.warning("No training rows carry every invariant; skipping full-feature ranking")
        return []
    spec = base_spec.with_features(FULL_REGRESSION_FEATURES)
    tr, _ = prepare_features(complete, complete, spec, TargetKind.SQRT_SHA)
    fitted = ModelFactory.fit(ModelKind.GBM, tr, train_cfg, task=Task.REGRESS, threads=threads)
    assert isinstance(fitted.model, GbmModel)
    return gbm_feature_importance(fitted.model)


@dataclass(frozen=True)
class RegressionSuiteResult:
    reports: dict[tuple[RegressionFeatureSet, EvaluationSet], EvaluationReport]
    baselines: dict[EvaluationSet, EvaluationReport]
    importances: dict[RegressionFeatureSet, list[tuple[str, float]]] = field(default_factory=dict)
    full_importance: list[tuple[str, float]] = field(default_factory=list)

    def get(self, feature_set: RegressionFeatureSet, eval_set: EvaluationSet) -> EvaluationReport:
        return self.reports[(feature_set, eval_set)]


def report_row(
    experiment: str, label: str, eval_set: str, report: EvaluationReport
) -> dict[str, Any]:
    return {
        "experiment": experiment,
        "feature_set": label,
        "eval_set": eval_set,
        "accuracy": report.accuracy,
        "mcc": report.mcc,
        "mcc_multiclass": report.mcc_multiclass,
        "n": report.n,
    }


def threshold_figure(title: str, curves: Mapping[str, EvaluationReport]) -> PlotSpec:
    return PlotSpec(
        kind=PlotKind.LINE,
        title=title,
        x_label="Threshold on true sqrt|Sha|",
        y_label="Accuracy",
        series=[threshold_series(name, report) for name, report in curves.items()],
    )


def importance_figure(
    importances: Mapping[str, list[tuple[str, float]]], title: str = "GBM gain importance"
) -> PlotSpec:
    """Gain importance per feature, one bar series per feature set."""
    categories: list[str] = []
    for pairs in importances.values():
        for name, _ in pairs:
            if name not in categories:
                categories.append(name)
    series = []
    for feature_set, pairs in importances.items():
        gains = dict(pairs)
        series.append(PlotSeries(name=feature_set, y=[gains.get(c) for c in categories]))
    return PlotSpec(
        kind=PlotKind.GROUPED_BARS,
        title=title,
        x_label="Feature",
        y_label="Total split gain",
        categories=categories,
        series=series,
    )


def run_regression_suite(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
    threads: int = 1,
) -> RegressionSuiteResult:
    """Three feature sets scored on the small-conductor test split and the large-conductor holdout.

    Without a configured holdout only the small-conductor cells are produced.
    """
    recorder = RunRecorder(cfg, "regress", threads)
    data = load_experiment_data(cfg, allow_download, extra_features=ALL_REGRESSION_FEATURES)
    evaluation: dict[str, Dataset] = {EvaluationSet.SMALL_CONDUCTOR.value: data.test}
    if data.holdout is not None and len(data.holdout) > 0:
        evaluation[EvaluationSet.LARGE_CONDUCTOR.value] = data.holdout
    elif data.holdout is not None:
        logger.warning("Large-conductor holdout is empty after filtering; skipping it")

    reports: dict[tuple[RegressionFeatureSet, EvaluationSet], EvaluationReport] = {}
    importances: dict[RegressionFeatureSet, list[tuple[str, float]]] = {}
    rows: list[dict[str, Any]] = []
    for feature_set, features in REGRESSION_FEATURE_SETS.items():
        cell = fit_regression_cell(
            data.train, evaluation, features, cfg.features, cfg.train, cfg.thresholds, threads
        )
        importances[feature_set] = cell.importance
        for eval_name, report in cell.reports.items():
            eval_set = EvaluationSet(eval_name)
            reports[(feature_set, eval_set)] = report
            rows.append(report_row(cfg.name, feature_set.value, eval_name, report))
            recorder.record_report(f"{cfg.name}:{eval_name}", feature_set.value, report)
            logger.info(
                "Regression cell scored",
                feature_set=feature_set.value,
                eval_set=eval_name,
                accuracy=report.accuracy,
                mcc=report.mcc,
            )

    full_importance = full_feature_importance(data.train, cfg.features, cfg.train, threads)
    logger.info("Full-feature importance ranked", top=[name for name, _ in full_importance[:3]])

    baselines: dict[EvaluationSet, EvaluationReport] = {}
    for eval_name, ds in evaluation.items():
        truth = [float(rec.sha_order or 1) ** 0.5 for rec in ds.records]
        baseline = naive_trivial_baseline(truth)
        baselines[EvaluationSet(eval_name)] = baseline
        rows.append(report_row(cfg.name, "naive_trivial", eval_name, baseline))

    if writer is not None:
        writer.write_table(f"regression_{cfg.name}", rows)
        writer.write_table(
            f"regression_{cfg.name}_importance",
            [
                {"feature_set": fs.value, "feature": name, "gain": gain}
                for fs, pairs in importances.items()
                for name, gain in pairs
            ],
        )
        writer.write_figure(
            f"regression_{cfg.name}_importance",
            importance_figure({fs.value: pairs for fs, pairs in importances.items()}),
        )
        if full_importance:
            writer.write_table(
                f"regression_{cfg.name}_full_importance",
                [{"feature": name, "gain": gain} for name, gain in full_importance],
            )
            writer.write_figure(
                f"regression_{cfg.name}_full_importance",
                importance_figure(
                    {"all_features": full_importance}, title="GBM gain importance, all features"
                ),
            )
        for eval_name in evaluation:
            curves = {
                fs.value: reports[(fs, EvaluationSet(eval_name))] for fs in REGRESSION_FEATURE_SETS
            }
            writer.write_figure(
                f"regression_{cfg.name}_{eval_name}_thresholds",
                threshold_figure(f"Accuracy by sqrt|Sha| threshold ({eval_name})", curves),
            )
    recorder.finish(writer, data.source)
    return RegressionSuiteResult(
        reports=reports,
        baselines=baselines,
        importances=importances,
        full_importance=full_importance,
    )
