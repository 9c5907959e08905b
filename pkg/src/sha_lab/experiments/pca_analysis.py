"""PCA of log-standardized features and the (real period, rank, torsion) correlation."""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray

from ..core.enums import FeatureName, PlotKind, TargetKind
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.curves import Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.features import FeatureSpec
from ..core.schemas.plots import PlotSeries, PlotSpec
from ..curvedata.sampling import apply_class_filter
from ..features.builder import build_matrix
from ..features.transforms import apply_scaler, fit_scaler, log_transform
from ..numcore.pca import PcaResult, loadings_table, pca
from ..numcore.stats import CorrelationResult, correlation
from ..observability.logger import get_logger
from .datasets import drop_incomplete, load_selector
from .manifest import RunRecorder

logger = get_logger(__name__)

CORRELATION_FEATURES: list[FeatureName] = [
    FeatureName.REAL_PERIOD,
    FeatureName.RANK,
    FeatureName.TORSION_ORDER,
]


@dataclass(frozen=True, eq=False)
class PcaAnalysisResult:
    pca: PcaResult
    feature_names: tuple[str, ...]
    loadings: list[dict[str, Any]]
    sha_orders: NDArray[np.int64]
    correlation: CorrelationResult
    correlation_features: tuple[str, ...]

    @property
    def top_ratios(self) -> tuple[float, float]:
        ratios = self.pca.explained_variance_ratio
        second = float(ratios[1]) if ratios.size > 1 else 0.0
        return float(ratios[0]), second


def _standardized(ds: Dataset, spec: FeatureSpec) -> tuple[NDArray[np.float64], tuple[str, ...]]:
    m = log_transform(build_matrix(ds, spec, TargetKind.NONE), spec)
    m = apply_scaler(m, fit_scaler(m))
    return m.x, m.feature_names


def analyse(ds: Dataset, spec: FeatureSpec) -> PcaAnalysisResult:
    """Log-transform, standardize over the whole selection, then project on two components."""
    spec = spec.with_log(True).model_copy(update={"standardize": True, "include_ap": False})
    x, names = _standardized(ds, spec)
    result = pca(x, k=min(2, x.shape[1]))
    k = result.k

    corr_spec = FeatureSpec(features=CORRELATION_FEATURES, log_transform=True)
    corr_x, corr_names = _standardized(ds, corr_spec)
    corr = correlation(corr_x)
    if corr.flagged:
        logger.warning(
            "Zero-variance columns in correlation input",
            columns=[corr_names[i] for i in corr.flagged],
        )

    logger.info(
        "PCA done",
        rows=len(ds),
        features=list(names),
        explained=[round(float(v), 6) for v in result.explained_variance_ratio[:k]],
        converged=result.converged,
    )
    return PcaAnalysisResult(
        pca=result,
        feature_names=names,
        loadings=loadings_table(result, names, k),
        sha_orders=np.array([rec.sha_order or 0 for rec in ds.records], dtype=np.int64),
        correlation=corr,
        correlation_features=corr_names,
    )


def scatter_figure(result: PcaAnalysisResult, title: str) -> PlotSpec:
    """PC1/PC2 projections, one series per |Sha| value."""
    proj = result.pca.projections
    second = proj[:, 1] if proj.shape[1] > 1 else np.zeros(proj.shape[0])
    series = []
    for value in np.unique(result.sha_orders):
        rows = result.sha_orders == value
        series.append(
            PlotSeries(
                name=f"|Sha| = {int(value)}",
                x=[float(v) for v in proj[rows, 0]],
                y=[float(v) for v in second[rows]],
            )
        )
    return PlotSpec(
        kind=PlotKind.SCATTER, title=title, x_label="PC1", y_label="PC2", series=series
    )


def run_pca_analysis(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
) -> PcaAnalysisResult:
    """PCA on the configured features of the class-filtered dataset (no split)."""
    recorder = RunRecorder(cfg, "pca")
    source = load_selector(cfg.dataset, allow_download)
    features = [*cfg.features.names, *(f.value for f in CORRELATION_FEATURES)]
    selected = apply_class_filter(drop_incomplete(source, features), cfg.class_filter, cfg.seed)
    result = analyse(selected, cfg.features)

    for j, ratio in enumerate(result.pca.explained_variance_ratio):
        recorder.record(f"explained_variance/PC{j + 1}", float(ratio))
    if writer is not None:
        writer.write_table(f"pca_{cfg.name}_loadings", result.loadings)
        writer.write_table(
            f"pca_{cfg.name}_variance",
            [
                {"component": f"PC{j + 1}", "eigenvalue": float(ev), "explained_ratio": float(r)}
                for j, (ev, r) in enumerate(
                    zip(result.pca.eigenvalues, result.pca.explained_variance_ratio)
                )
            ],
        )
        writer.write_table(
            f"pca_{cfg.name}_correlation",
            [
                {"feature": name, **dict(zip(result.correlation_features, map(float, row)))}
                for name, row in zip(result.correlation_features, result.correlation.matrix)
            ],
        )
        writer.write_figure(
            f"pca_{cfg.name}_scatter", scatter_figure(result, f"PCA projection ({cfg.name})")
        )
        writer.write_figure(
            f"pca_{cfg.name}_correlation",
            PlotSpec(
                kind=PlotKind.HEATMAP,
                title="Feature correlation",
                categories=list(result.correlation_features),
                matrix=result.correlation.matrix.tolist(),
            ),
        )
    recorder.finish(writer, source)
    return result
