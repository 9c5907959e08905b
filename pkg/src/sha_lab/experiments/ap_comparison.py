"""Network ablation with and without the first 100 a_p values."""

from dataclasses import dataclass
from typing import Any, Optional

from ..core.enums import ModelKind, PlotKind, Transform
from ..core.exceptions import MissingApColumnsError
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.plots import PlotSeries, PlotSpec
from ..core.schemas.reports import AblationResult
from ..observability.logger import get_logger
from .ablation import NO_DELETION, ablation_grid, ablation_rows
from .datasets import load_experiment_data
from .manifest import RunRecorder

logger = get_logger(__name__)


@dataclass(frozen=True)
class ApComparisonResult:
    without_ap: AblationResult
    with_ap: AblationResult
    transform: Transform

    def accuracy_delta(self, deleted: Optional[str] = None) -> Optional[float]:
        """with-a_p minus without-a_p accuracy for one deletion."""
        a = self.with_ap.get(ModelKind.MLP, self.transform, deleted)
        b = self.without_ap.get(ModelKind.MLP, self.transform, deleted)
        if a is None or b is None or a.accuracy is None or b.accuracy is None:
            return None
        return a.accuracy - b.accuracy


def comparison_figure(result: ApComparisonResult) -> PlotSpec:
    categories = [NO_DELETION, *result.without_ap.features]
    series = []
    for name, grid in (("without a_p", result.without_ap), ("with a_p", result.with_ap)):
        ys: list[Optional[float]] = []
        for label in categories:
            deleted = None if label == NO_DELETION else label
            cell = grid.get(ModelKind.MLP, result.transform, deleted)
            ys.append(cell.accuracy if cell is not None else None)
        series.append(PlotSeries(name=name, y=ys))
    return PlotSpec(
        kind=PlotKind.GROUPED_BARS,
        title="Network accuracy with and without a_p values",
        x_label="Feature deleted",
        y_label="Test accuracy",
        categories=categories,
        series=series,
    )


def run_ap_comparison(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
    threads: int = 1,
) -> ApComparisonResult:
    """Two network ablation grids on the same split, one with the a_p columns appended.

    Raises:
        MissingApColumnsError: Some selected curve has no a_p values
    """
    recorder = RunRecorder(cfg, "apcompare", threads)
    base = cfg.features.model_copy(update={"include_ap": False})
    data = load_experiment_data(cfg.model_copy(update={"features": base}), allow_download)
    if not data.selected.has_ap_values():
        raise MissingApColumnsError(
            "a_p comparison needs a_p values on every selected curve",
            {"dataset": data.source.source},
        )

    transform = Transform.LOG if any(base.log_transform) else Transform.RAW
    grids = {}
    for include_ap in (False, True):
        spec = base.model_copy(update={"include_ap": include_ap})
        name = f"{cfg.name}_{'with' if include_ap else 'without'}_ap"
        grids[include_ap] = ablation_grid(
            name,
            data.train,
            data.test,
            spec,
            cfg.train,
            models=(ModelKind.MLP,),
            transforms=(transform,),
            threads=threads,
        )
    result = ApComparisonResult(without_ap=grids[False], with_ap=grids[True], transform=transform)

    rows: list[dict[str, Any]] = []
    for grid in (result.without_ap, result.with_ap):
        rows.extend(ablation_rows(grid))
        for cell in grid.cells:
            deleted = cell.deleted_feature or NO_DELETION
            recorder.record(f"{grid.experiment}/{deleted}", cell.accuracy)
    logger.info("a_p comparison done", delta_none=result.accuracy_delta(None))

    if writer is not None:
        writer.write_table(f"apcompare_{cfg.name}", rows)
        writer.write_figure(f"apcompare_{cfg.name}", comparison_figure(result))
    recorder.finish(writer, data.source)
    return result
