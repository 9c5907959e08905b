"""Out-of-distribution prediction for a single curve without a special value."""

from dataclasses import dataclass, field
from typing import Any, Optional

from ..core.enums import FeatureName, ModelKind, TargetKind, Task
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.interfaces.model import IModel
from ..core.schemas.curves import CurveRecord, Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.features import FeatureSpec
from ..core.schemas.reports import EvaluationReport
from ..core.schemas.training import TrainConfig
from ..features.builder import build_matrix
from ..features.matrix import FeatureMatrix, Scaler
from ..features.transforms import apply_scaler, log_transform, prepare_features
from ..metrics.regression import round_sqrt_sha
from ..models.factory import ModelFactory
from ..observability.logger import get_logger
from .constants import E29_RECORD
from .datasets import load_experiment_data
from .evaluation import classification_report, regression_report
from .manifest import RunRecorder

logger = get_logger(__name__)

# Rank replaces the special value, which is out of reach for very high rank.
SINGLE_CURVE_FEATURES: list[FeatureName] = [
    FeatureName.RANK,
    FeatureName.TORSION_ORDER,
    FeatureName.REAL_PERIOD,
    FeatureName.REGULATOR,
    FeatureName.TAMAGAWA_PRODUCT,
]

CLASSIFIER_KINDS: tuple[ModelKind, ...] = (ModelKind.GBM, ModelKind.MLP)


@dataclass(frozen=True, eq=False)
class SingleCurveModels:
    """A sqrt|Sha| regressor and trivial-Sha classifiers sharing one feature pipeline."""

    spec: FeatureSpec
    scaler: Optional[Scaler]
    regressor: IModel
    classifiers: dict[ModelKind, IModel]
    reports: dict[str, EvaluationReport] = field(default_factory=dict)

    def matrix_for(self, rec: CurveRecord) -> FeatureMatrix:
        """Transform one record exactly as the training rows were.

        Raises:
            MissingFeatureError: The record lacks a model feature
        """
        ds = Dataset(records=(rec,), source=f"single:{rec.label}")
        m = log_transform(build_matrix(ds, self.spec, TargetKind.NONE), self.spec)
        return apply_scaler(m, self.scaler) if self.scaler is not None else m


@dataclass(frozen=True)
class SingleCurvePrediction:
    label: str
    sqrt_sha_raw: float
    sqrt_sha: int
    sha_order: int
    trivial_probability: dict[ModelKind, float]

    def to_row(self) -> dict[str, Any]:
        row: dict[str, Any] = {
            "label": self.label,
            "sqrt_sha_raw": self.sqrt_sha_raw,
            "sqrt_sha": self.sqrt_sha,
            "sha_order": self.sha_order,
        }
        for kind, prob in self.trivial_probability.items():
            row[f"p_trivial_{kind.value}"] = prob
        return row


def train_single_curve_models(
    train: Dataset,
    test: Dataset,
    train_cfg: TrainConfig,
    standardize: bool = True,
    threads: int = 1,
) -> SingleCurveModels:
    """Fit the regressor and classifiers on log features, without the special value."""
    spec = FeatureSpec(
        features=SINGLE_CURVE_FEATURES, log_transform=True, standardize=standardize
    )
    reports: dict[str, EvaluationReport] = {}

    tr, te = prepare_features(train, test, spec, TargetKind.SQRT_SHA)
    regressor = ModelFactory.fit(
        ModelKind.GBM, tr, train_cfg, task=Task.REGRESS, threads=threads
    ).model
    reports["gbm_regressor"] = regression_report(regressor, te)

    tr, te = prepare_features(train, test, spec, TargetKind.TRIVIAL_SHA)
    classifiers: dict[ModelKind, IModel] = {}
    for kind in CLASSIFIER_KINDS:
        outcome = ModelFactory.fit(kind, tr, train_cfg, test=te, threads=threads)
        classifiers[kind] = outcome.model
        reports[f"{kind.value}_trivial_classifier"] = classification_report(outcome.model, te)

    for name, report in reports.items():
        logger.info("Single-curve model scored", model=name, accuracy=report.accuracy)
    return SingleCurveModels(
        spec=spec, scaler=tr.scaler, regressor=regressor, classifiers=classifiers, reports=reports
    )


def predict_single_curve(models: SingleCurveModels, rec: CurveRecord) -> SingleCurvePrediction:
    """Rounded |Sha| from the regressor and P(trivial Sha) from every classifier.

    Raises:
        MissingFeatureError: ``rec`` lacks a model feature (e.g. the regulator)
    """
    m = models.matrix_for(rec)
    raw = float(models.regressor.predict(m.x)[0])
    root = round_sqrt_sha(raw)
    probs = {kind: float(model.predict_proba(m.x)[0]) for kind, model in models.classifiers.items()}
    prediction = SingleCurvePrediction(
        label=rec.label,
        sqrt_sha_raw=raw,
        sqrt_sha=root,
        sha_order=root * root,
        trivial_probability=probs,
    )
    logger.info(
        "Single curve predicted",
        label=rec.label,
        sha_order=prediction.sha_order,
        trivial_probability={k.value: v for k, v in probs.items()},
    )
    return prediction


def run_single_curve_prediction(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    record: CurveRecord = E29_RECORD,
    *,
    allow_download: bool = False,
    threads: int = 1,
) -> tuple[SingleCurveModels, SingleCurvePrediction]:
    """Train on the configured data and predict ``record`` (the rank-29 curve by default)."""
    recorder = RunRecorder(cfg, "predict", threads)
    data = load_experiment_data(
        cfg, allow_download, extra_features=[f.value for f in SINGLE_CURVE_FEATURES]
    )
    models = train_single_curve_models(
        data.train, data.test, cfg.train, cfg.features.standardize, threads
    )
    prediction = predict_single_curve(models, record)

    for name, report in models.reports.items():
        recorder.record_report(f"{cfg.name}:predict", name, report)
    recorder.record(f"{record.label}/sha_order", prediction.sha_order)
    for kind, prob in prediction.trivial_probability.items():
        recorder.record(f"{record.label}/p_trivial_{kind.value}", prob)
    if writer is not None:
        writer.write_table(f"predict_{cfg.name}", [prediction.to_row()])
        writer.write_table(
            f"predict_{cfg.name}_models",
            [
                {"model": name, "accuracy": r.accuracy, "mcc": r.mcc, "n": r.n}
                for name, r in models.reports.items()
            ],
        )
    recorder.finish(writer, data.source)
    return models, prediction
