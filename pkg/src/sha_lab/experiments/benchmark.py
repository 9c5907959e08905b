"""All-BSD-features benchmark: the four baseline models on the 4-vs-9 problem."""

from dataclasses import dataclass, field
from typing import Any, Optional

from ..core.enums import BSD_FEATURES, ModelKind, TargetKind, Transform
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.features import FeatureSpec
from ..core.schemas.reports import EvaluationReport
from ..features.builder import build_matrix
from ..features.transforms import log_transform, prepare_features
from ..models.factory import ModelFactory
from ..numcore.linalg import OlsResult, ols_fit
from ..observability.logger import get_logger
from .datasets import load_experiment_data
from .evaluation import classification_report
from .manifest import RunRecorder

logger = get_logger(__name__)

# |Sha| = L * tors^2 / (Omega * Reg * prod c_p), in BSD_FEATURES order.
BSD_EXPONENTS: tuple[float, ...] = (1.0, 2.0, -1.0, -1.0, -1.0)

_RUNS: tuple[tuple[str, ModelKind, Transform], ...] = (
    ("logistic_raw", ModelKind.LOGISTIC, Transform.RAW),
    ("logistic_log", ModelKind.LOGISTIC, Transform.LOG),
    ("gbm_raw", ModelKind.GBM, Transform.RAW),
)


@dataclass(frozen=True)
class BenchmarkResult:
    """Classifier reports keyed by run name plus the OLS exponent fit."""

    reports: dict[str, EvaluationReport]
    ols: OlsResult
    table: list[dict[str, Any]] = field(default_factory=list)


def run_all_bsd_benchmark(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
    threads: int = 1,
) -> BenchmarkResult:
    """Raw logistic, log logistic, OLS exponent recovery and raw GBM.

    The classifiers use the configured split; OLS regresses log|Sha| on the
    unscaled log features of the whole selection, where the BSD identity
    makes the fit exact.
    """
    recorder = RunRecorder(cfg, "benchmark", threads)
    data = load_experiment_data(cfg, allow_download, extra_features=[f.value for f in BSD_FEATURES])
    base = FeatureSpec.bsd(standardize=cfg.features.standardize)

    reports: dict[str, EvaluationReport] = {}
    table: list[dict[str, Any]] = []
    for name, kind, transform in _RUNS:
        spec = base.with_log(transform == Transform.LOG)
        train, test = prepare_features(data.train, data.test, spec)
        outcome = ModelFactory.fit(kind, train, cfg.train, test=test, threads=threads)
        report = classification_report(outcome.model, test)
        reports[name] = report
        recorder.record_report("benchmark", name, report)
        table.append(
            {
                "model": kind.value,
                "transform": transform.value,
                "accuracy": report.accuracy,
                "mcc": report.mcc,
                "n": report.n,
            }
        )
        logger.info("Benchmark model scored", run=name, accuracy=report.accuracy)

    log_spec = FeatureSpec.bsd(log=True, standardize=False)
    full = log_transform(build_matrix(data.selected, log_spec, TargetKind.LOG_SHA), log_spec)
    ols = ols_fit(full.x, full.require_y())
    exponent_rows = [
        {"feature": feature.value, "exponent": float(coef), "expected": expected}
        for feature, coef, expected in zip(BSD_FEATURES, ols.coefficients, BSD_EXPONENTS)
    ]
    exponent_rows.append({"feature": "intercept", "exponent": ols.intercept, "expected": 0.0})
    for row in exponent_rows:
        recorder.record(f"ols/{row['feature']}", row["exponent"])
    logger.info(
        "OLS exponents recovered",
        coefficients=[round(float(c), 9) for c in ols.coefficients],
        intercept=ols.intercept,
        solver=ols.solver,
    )

    if writer is not None:
        writer.write_table("benchmark", table)
        writer.write_table("benchmark_ols", exponent_rows)
    recorder.finish(writer, data.source)
    return BenchmarkResult(reports=reports, ols=ols, table=table)
