"""Separately trained regressors for rank-0 and positive-rank curves."""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Optional

from ..core.enums import RankStratum, RegressionFeatureSet
from ..core.exceptions import EmptyStratumError
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.curves import CurveRecord, Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.reports import EvaluationReport
from ..curvedata.sampling import train_test_split
from ..observability.logger import get_logger
from .datasets import load_experiment_data
from .evaluation import REGRESSION_FEATURE_SETS
from .manifest import RunRecorder
from .regression import ALL_REGRESSION_FEATURES, fit_regression_cell, report_row, threshold_figure

logger = get_logger(__name__)

_TEST = "test"


def in_stratum(rec: CurveRecord, stratum: RankStratum) -> bool:
    if stratum == RankStratum.RANK_ZERO:
        return rec.rank == 0
    return rec.rank > 0


def stratum_dataset(ds: Dataset, stratum: RankStratum) -> Dataset:
    """Curves of one rank stratum.

    Raises:
        EmptyStratumError: No curve falls in the stratum
    """
    records = [rec for rec in ds.records if in_stratum(rec, stratum)]
    if not records:
        raise EmptyStratumError(
            f"No curves in stratum {stratum.value}", {"stratum": stratum.value, "rows": len(ds)}
        )
    return ds.with_records(records, source=f"{ds.source}#{stratum.value}")


@dataclass(frozen=True)
class StratifiedResult:
    reports: dict[tuple[RankStratum, RegressionFeatureSet], EvaluationReport]

    def get(self, stratum: RankStratum, feature_set: RegressionFeatureSet) -> EvaluationReport:
        return self.reports[(stratum, feature_set)]


def run_rank_stratified(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
    threads: int = 1,
    strata: Sequence[RankStratum] = (RankStratum.RANK_ZERO, RankStratum.POSITIVE_RANK),
) -> StratifiedResult:
    """Split each stratum with the configured seed and train one regressor per feature set."""
    recorder = RunRecorder(cfg, "stratify", threads)
    data = load_experiment_data(cfg, allow_download, extra_features=ALL_REGRESSION_FEATURES)
    # Fail before any training when a requested stratum is empty.
    subsets = {stratum: stratum_dataset(data.selected, stratum) for stratum in strata}

    reports: dict[tuple[RankStratum, RegressionFeatureSet], EvaluationReport] = {}
    rows: list[dict[str, Any]] = []
    for stratum, subset in subsets.items():
        train, test = train_test_split(subset, cfg.split)
        curves: dict[str, EvaluationReport] = {}
        for feature_set, features in REGRESSION_FEATURE_SETS.items():
            cell = fit_regression_cell(
                train, {_TEST: test}, features, cfg.features, cfg.train, cfg.thresholds, threads
            )
            report = cell.reports[_TEST]
            reports[(stratum, feature_set)] = report
            curves[feature_set.value] = report
            rows.append(report_row(cfg.name, feature_set.value, stratum.value, report))
            recorder.record_report(f"{cfg.name}:{stratum.value}", feature_set.value, report)
        logger.info(
            "Stratum done",
            stratum=stratum.value,
            train=len(train),
            test=len(test),
            accuracy={k: v.accuracy for k, v in curves.items()},
        )
        if writer is not None:
            writer.write_figure(
                f"stratified_{cfg.name}_{stratum.value}_thresholds",
                threshold_figure(f"Accuracy by sqrt|Sha| threshold ({stratum.value})", curves),
            )

    if writer is not None:
        writer.write_table(f"stratified_{cfg.name}", rows)
    recorder.finish(writer, data.source)
    return StratifiedResult(reports=reports)
