"""Run manifests: what ran, on which data, with which results."""

from datetime import datetime, timezone
from typing import Any, Optional

from .. import __version__
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.curves import Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.manifest import RunManifest
from ..core.schemas.reports import EvaluationReport
from ..curvedata.csv_io import dataset_fingerprint
from ..observability.logger import bind_run_context, clear_run_context, get_logger

logger = get_logger(__name__)


def summary_row(
    experiment: str, feature_set: str, report: EvaluationReport
) -> dict[str, Any]:
    """The (experiment, feature_set, accuracy, mcc, n) row aggregated by ``report``."""
    return {
        "experiment": experiment,
        "feature_set": feature_set,
        "accuracy": report.accuracy,
        "mcc": report.mcc,
        "n": report.n,
    }


class RunRecorder:
    """Collects metrics for one run and writes its manifest at the end."""

    def __init__(self, cfg: ExperimentConfig, command: str, threads: int = 1):
        self._cfg = cfg
        self._command = command
        self._threads = threads
        self._started = datetime.now(timezone.utc)
        self.metrics: dict[str, float] = {}
        self.rows: list[dict[str, Any]] = []
        bind_run_context(experiment=cfg.name, command=command, run_id=cfg.run_id(command))

    def record(self, key: str, value: Optional[float]) -> None:
        if value is not None:
            self.metrics[key] = float(value)

    def record_report(self, experiment: str, feature_set: str, report: EvaluationReport) -> None:
        self.rows.append(summary_row(experiment, feature_set, report))
        self.record(f"{feature_set}/accuracy", report.accuracy)
        self.record(f"{feature_set}/mcc", report.mcc)

    def finish(
        self, writer: Optional[IArtifactWriter], dataset: Optional[Dataset]
    ) -> Optional[RunManifest]:
        """Build the manifest and hand it to ``writer`` (no-op without one)."""
        clear_run_context()
        if writer is None:
            return None
        manifest = RunManifest(
            run_id=self._cfg.run_id(self._command),
            experiment=self._cfg.name,
            command=self._command,
            seed=self._cfg.seed,
            tool_version=__version__,
            dataset=dataset_fingerprint(dataset) if dataset is not None else None,
            metrics=self.metrics,
            rows=self.rows,
            outputs=[str(p) for p in writer.written],
            threads=self._threads,
            config=self._cfg,
            started_at=self._started,
            finished_at=datetime.now(timezone.utc),
        )
        path = writer.write_manifest(manifest)
        logger.info("Run manifest written", path=str(path), run_id=manifest.run_id)
        return manifest
