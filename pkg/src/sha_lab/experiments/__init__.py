"""Experiment runners: each loads data, trains, scores and emits artifacts."""

from .ablation import ablation_figure, ablation_grid, ablation_rows, run_remove_one_ablation
from .ap_comparison import ApComparisonResult, run_ap_comparison
from .benchmark import BSD_EXPONENTS, BenchmarkResult, run_all_bsd_benchmark
from .constants import DELAUNAY_HEURISTIC, E29_RECORD, PUBLISHED_OBSERVED
from .datasets import ExperimentData, drop_incomplete, load_experiment_data, load_selector
from .delaunay import (
    DelaunayResult,
    conductor_grid,
    run_delaunay_analysis,
    run_delaunay_experiment,
)
from .evaluation import REGRESSION_FEATURE_SETS
from .manifest import RunRecorder, summary_row
from .pca_analysis import PcaAnalysisResult, analyse, run_pca_analysis
from .regression import (
    RegressionSuiteResult,
    fit_regression_cell,
    full_feature_importance,
    run_regression_suite,
)
from .single_curve import (
    SINGLE_CURVE_FEATURES,
    SingleCurveModels,
    SingleCurvePrediction,
    predict_single_curve,
    run_single_curve_prediction,
    train_single_curve_models,
)
from .stratified import StratifiedResult, run_rank_stratified, stratum_dataset

__all__ = [
    "ApComparisonResult",
    "BSD_EXPONENTS",
    "BenchmarkResult",
    "DELAUNAY_HEURISTIC",
    "DelaunayResult",
    "E29_RECORD",
    "ExperimentData",
    "PUBLISHED_OBSERVED",
    "PcaAnalysisResult",
    "REGRESSION_FEATURE_SETS",
    "RegressionSuiteResult",
    "RunRecorder",
    "SINGLE_CURVE_FEATURES",
    "SingleCurveModels",
    "SingleCurvePrediction",
    "StratifiedResult",
    "ablation_figure",
    "ablation_grid",
    "ablation_rows",
    "analyse",
    "conductor_grid",
    "drop_incomplete",
    "fit_regression_cell",
    "full_feature_importance",
    "load_experiment_data",
    "load_selector",
    "predict_single_curve",
    "run_all_bsd_benchmark",
    "run_ap_comparison",
    "run_delaunay_analysis",
    "run_delaunay_experiment",
    "run_pca_analysis",
    "run_rank_stratified",
    "run_regression_suite",
    "run_single_curve_prediction",
    "stratum_dataset",
    "summary_row",
    "train_single_curve_models",
]
