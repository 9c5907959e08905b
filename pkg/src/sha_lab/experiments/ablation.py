"""Remove-one-feature ablation over models and feature transforms."""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional

from ..core.enums import ModelKind, PlotKind, Transform
from ..core.exceptions import ShaLabError
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.curves import Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.features import FeatureSpec
from ..core.schemas.plots import PlotSeries, PlotSpec
from ..core.schemas.reports import AblationCell, AblationResult
from ..core.schemas.training import TrainConfig
from ..features.builder import infer_classes
from ..features.matrix import FeatureMatrix
from ..features.transforms import drop_feature, prepare_features
from ..metrics.classification import accuracy
from ..models.factory import ModelFactory
from ..observability.logger import get_logger
from .datasets import load_experiment_data
from .manifest import RunRecorder

logger = get_logger(__name__)

ABLATION_MODELS: tuple[ModelKind, ...] = (ModelKind.LOGISTIC, ModelKind.GBM, ModelKind.MLP)
ABLATION_TRANSFORMS: tuple[Transform, ...] = (Transform.RAW, Transform.LOG)

NO_DELETION = "none"


@dataclass(frozen=True)
class _CellTask:
    model: ModelKind
    transform: Transform
    deleted: Optional[str]


def _deletion_label(deleted: Optional[str]) -> str:
    return deleted or NO_DELETION


def _run_cell(
    task: _CellTask,
    matrices: dict[Transform, tuple[FeatureMatrix, FeatureMatrix]],
    train_cfg: TrainConfig,
) -> AblationCell:
    """Train and score one grid cell; library errors become an errored cell."""
    try:
        train, test = matrices[task.transform]
        if task.deleted is not None:
            train, test = drop_feature(train, task.deleted), drop_feature(test, task.deleted)
        outcome = ModelFactory.fit(task.model, train, train_cfg, test=test)
        final = accuracy(outcome.model.predict(test.x), test.require_y())
        # Networks report their best test epoch, kept comparable with published grids.
        best = outcome.best_test_accuracy if outcome.best_test_accuracy is not None else final
        cell = AblationCell(
            model=task.model,
            transform=task.transform,
            deleted_feature=task.deleted,
            accuracy=best,
            final_accuracy=outcome.final_test_accuracy,
        )
    except ShaLabError as e:
        logger.warning(
            "Ablation cell failed",
            model=task.model.value,
            transform=task.transform.value,
            deleted=_deletion_label(task.deleted),
            error=e.message,
        )
        return AblationCell(
            model=task.model,
            transform=task.transform,
            deleted_feature=task.deleted,
            error=f"{type(e).__name__}: {e.message}",
        )
    logger.info(
        "Ablation cell done",
        model=task.model.value,
        transform=task.transform.value,
        deleted=_deletion_label(task.deleted),
        accuracy=cell.accuracy,
    )
    return cell


def ablation_grid(
    name: str,
    train_ds: Dataset,
    test_ds: Dataset,
    spec: FeatureSpec,
    train_cfg: TrainConfig,
    models: Sequence[ModelKind] = ABLATION_MODELS,
    transforms: Sequence[Transform] = ABLATION_TRANSFORMS,
    threads: int = 1,
) -> AblationResult:
    """Every (model, transform, deletion) cell over the features of ``spec``.

    Matrices are prepared once per transform; per-column scaling makes
    dropping a column afterwards equal to never building it. Cells are
    independent and run on up to ``threads`` workers; results keep grid order.
    """
    classes = infer_classes(train_ds, test_ds)
    matrices = {
        t: prepare_features(train_ds, test_ds, spec.with_log(t == Transform.LOG), classes=classes)
        for t in transforms
    }
    deletions: list[Optional[str]] = [None, *spec.names]
    tasks = [_CellTask(m, t, d) for m in models for t in transforms for d in deletions]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cells = list(pool.map(lambda task: _run_cell(task, matrices, train_cfg), tasks))
    else:
        cells = [_run_cell(task, matrices, train_cfg) for task in tasks]
    return AblationResult(experiment=name, features=list(spec.names), cells=cells)


def ablation_rows(result: AblationResult) -> list[dict[str, Any]]:
    return [
        {
            "experiment": result.experiment,
            "model": cell.model.value,
            "transform": cell.transform.value,
            "deleted_feature": _deletion_label(cell.deleted_feature),
            "accuracy": cell.accuracy,
            "final_accuracy": cell.final_accuracy,
            "error": cell.error,
        }
        for cell in result.cells
    ]


def ablation_figure(result: AblationResult) -> PlotSpec:
    """Grouped bars: one group per deleted feature, one bar per (model, transform)."""
    categories = [NO_DELETION, *result.features]
    pairs = sorted(
        {(c.model, c.transform) for c in result.cells},
        key=lambda p: (ABLATION_MODELS.index(p[0]), ABLATION_TRANSFORMS.index(p[1])),
    )
    series = []
    for model, transform in pairs:
        ys: list[Optional[float]] = []
        for label in categories:
            cell = result.get(model, transform, None if label == NO_DELETION else label)
            ys.append(cell.accuracy if cell is not None else None)
        series.append(PlotSeries(name=f"{model.value} ({transform.value})", y=ys))
    return PlotSpec(
        kind=PlotKind.GROUPED_BARS,
        title=f"Feature deleted vs accuracy across models ({result.experiment})",
        x_label="Feature deleted",
        y_label="Test accuracy",
        categories=categories,
        series=series,
    )


def run_remove_one_ablation(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
    threads: int = 1,
) -> AblationResult:
    """Train logistic, GBM and MLP on raw and log data with each feature removed in turn."""
    recorder = RunRecorder(cfg, "ablate", threads)
    data = load_experiment_data(cfg, allow_download)
    result = ablation_grid(
        cfg.name, data.train, data.test, cfg.features, cfg.train, threads=threads
    )

    for cell in result.cells:
        key = f"{cell.model.value}/{cell.transform.value}/{_deletion_label(cell.deleted_feature)}"
        recorder.record(key, cell.accuracy)
    if writer is not None:
        writer.write_table(f"ablation_{cfg.name}", ablation_rows(result))
        writer.write_figure(f"ablation_{cfg.name}", ablation_figure(result))
    recorder.finish(writer, data.source)
    return result
