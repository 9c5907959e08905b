"""Tests for the experiment runners on small synthetic datasets."""

import json

import numpy as np
import pytest
import structlog

from sha_lab.cli.writer import DirectoryArtifactWriter
from sha_lab.core.enums import (
    DataSourceKind,
    EvaluationSet,
    ModelKind,
    RankStratum,
    RegressionFeatureSet,
    Transform,
)
from sha_lab.core.exceptions import (
    EmptyResultError,
    EmptyStratumError,
    MissingApColumnsError,
    MissingFeatureError,
    UsageError,
)
from sha_lab.core.schemas.curves import CurveRecord, Dataset
from sha_lab.core.schemas.experiments import (
    DatasetSelector,
    ExperimentConfig,
    LmfdbQuery,
    SyntheticSpec,
)
from sha_lab.core.schemas.features import FeatureSpec
from sha_lab.core.utils.rng import make_rng
from sha_lab.curvedata.csv_io import save_dataset
from sha_lab.experiments import (
    BSD_EXPONENTS,
    DELAUNAY_HEURISTIC,
    E29_RECORD,
    RunRecorder,
    conductor_grid,
    drop_incomplete,
    full_feature_importance,
    load_experiment_data,
    load_selector,
    predict_single_curve,
    run_all_bsd_benchmark,
    run_ap_comparison,
    run_delaunay_analysis,
    run_pca_analysis,
    run_rank_stratified,
    run_regression_suite,
    run_remove_one_ablation,
    run_single_curve_prediction,
    stratum_dataset,
)

THREE_CLASSES = {1: 1.0, 4: 1.0, 9: 1.0}


@pytest.fixture
def writer(tmp_path) -> DirectoryArtifactWriter:
    return DirectoryArtifactWriter(tmp_path / "out")


def _manifest(writer: DirectoryArtifactWriter) -> dict:
    paths = sorted((writer.root / "manifests").glob("*.json"))
    assert len(paths) == 1
    return json.loads(paths[0].read_text(encoding="utf-8"))


# ---- Data assembly ----


class TestExperimentData:
    def test_split_follows_config(self, make_config):
        data = load_experiment_data(make_config(n=200))
        assert len(data.source) == 200
        assert len(data.train) + len(data.test) == len(data.selected)
        assert data.holdout is None

    def test_config_defaults_to_bundled_curves(self):
        cfg = ExperimentConfig(name="defaults")
        assert cfg.dataset.kind == DataSourceKind.BUNDLED
        ds = load_selector(cfg.dataset)
        assert len(ds) == 6
        assert all(rec.sha_order == 1 for rec in ds.records)

    def test_lmfdb_needs_download(self):
        selector = DatasetSelector(kind=DataSourceKind.LMFDB, query=LmfdbQuery(rank=0))
        with pytest.raises(UsageError):
            load_selector(selector)

    def test_csv_selector_tolerance(self, tmp_path, curve_11a1, curve_37a1):
        nudged = curve_11a1.model_copy(
            update={"special_value": curve_11a1.special_value * 1.001}
        )
        path = tmp_path / "nudged.csv"
        save_dataset(Dataset(records=(nudged, curve_37a1), source="nudged"), path)
        strict = DatasetSelector(kind=DataSourceKind.CSV, path=path, tolerance=1e-4)
        loose = strict.model_copy(update={"tolerance": 1e-2})
        assert load_selector(strict).labels == ["37.a1"]
        assert load_selector(loose).labels == ["11.a1", "37.a1"]

    def test_drop_incomplete(self, curve_11a1, curve_37a1):
        partial = curve_37a1.model_copy(update={"regulator": None})
        ds = Dataset(records=(curve_11a1, partial), source="two")
        assert drop_incomplete(ds, ["regulator"]).labels == ["11.a1"]

    def test_recorder_writes_manifest(self, make_config, writer):
        cfg = make_config("recorded")
        recorder = RunRecorder(cfg, "benchmark", threads=2)
        recorder.record("score", 0.5)
        recorder.record("missing", None)
        manifest = recorder.finish(writer, None)
        assert manifest is not None
        stored = _manifest(writer)
        assert stored["experiment"] == "recorded"
        assert stored["metrics"] == {"score": 0.5}
        assert stored["threads"] == 2
        assert stored["run_id"] == cfg.run_id("benchmark")

    def test_run_id_depends_on_command(self, make_config):
        cfg = make_config()
        assert cfg.run_id("regress") != cfg.run_id("stratify")
        assert cfg.run_id("regress") == make_config().run_id("regress")

    def test_recorder_without_writer(self, make_config):
        assert RunRecorder(make_config(), "benchmark").finish(None, None) is None

    def test_recorder_scopes_log_context(self, make_config):
        recorder = RunRecorder(make_config("scoped"), "pca")
        context = structlog.contextvars.get_contextvars()
        assert context["experiment"] == "scoped"
        assert context["command"] == "pca"
        recorder.finish(None, None)
        assert structlog.contextvars.get_contextvars() == {}


# ---- Classification experiments ----


class TestBenchmark:
    def test_recovers_bsd_exponents(self, make_config, writer):
        result = run_all_bsd_benchmark(make_config("bench"), writer)
        np.testing.assert_allclose(result.ols.coefficients, BSD_EXPONENTS, atol=1e-6)
        assert result.ols.intercept == pytest.approx(0.0, abs=1e-6)
        assert set(result.reports) == {"logistic_raw", "logistic_log", "gbm_raw"}
        assert result.reports["logistic_log"].accuracy >= 0.95
        assert (writer.root / "results" / "benchmark.csv").exists()
        assert (writer.root / "results" / "benchmark_ols.csv").exists()
        assert "ols/special_value" in _manifest(writer)["metrics"]


class TestAblation:
    def test_full_grid(self, make_config, writer):
        result = run_remove_one_ablation(make_config("grid", n=300), writer)
        assert len(result.cells) == 3 * 2 * 6
        assert result.is_complete
        assert result.features == FeatureSpec.bsd().names

        baseline = result.get(ModelKind.LOGISTIC, Transform.LOG, None)
        assert baseline is not None and baseline.accuracy is not None
        no_special = result.get(ModelKind.LOGISTIC, Transform.LOG, "special_value")
        assert no_special is not None and no_special.accuracy is not None
        assert no_special.accuracy < baseline.accuracy
        network = result.get(ModelKind.MLP, Transform.RAW, "regulator")
        assert network is not None and network.final_accuracy is not None
        assert network.accuracy >= network.final_accuracy

        assert (writer.root / "results" / "ablation_grid.csv").exists()
        assert (writer.root / "figures" / "ablation_grid.svg").exists()


class TestApComparison:
    def test_requires_ap_values(self, make_config):
        with pytest.raises(MissingApColumnsError):
            run_ap_comparison(make_config("noap", n=200))

    def test_grids_with_and_without_ap(self, make_config, writer):
        selector = DatasetSelector(
            kind=DataSourceKind.SYNTHETIC,
            synthetic=SyntheticSpec(n=200, class_spec={4: 1.0, 9: 1.0}, seed=7, include_ap=True),
        )
        result = run_ap_comparison(make_config("ap", dataset=selector), writer)
        assert result.transform == Transform.RAW
        assert len(result.without_ap.cells) == len(result.with_ap.cells) == 6
        assert all(cell.model == ModelKind.MLP for cell in result.with_ap.cells)
        assert result.accuracy_delta(None) is not None
        assert (writer.root / "results" / "apcompare_ap.csv").exists()


# ---- Regression experiments ----


class TestRegressionSuite:
    def test_small_conductor_only(self, make_config, writer):
        cfg = make_config("reg", classes=THREE_CLASSES)
        result = run_regression_suite(cfg, writer)
        assert set(result.reports) == {
            (fs, EvaluationSet.SMALL_CONDUCTOR) for fs in RegressionFeatureSet
        }
        baseline = result.baselines[EvaluationSet.SMALL_CONDUCTOR]
        best = result.get(RegressionFeatureSet.ALL_BSD, EvaluationSet.SMALL_CONDUCTOR)
        assert best.accuracy > baseline.accuracy
        assert best.threshold_curve is not None
        assert [p.threshold for p in best.threshold_curve] == [1.0, 2.0, 3.0]
        assert result.importances[RegressionFeatureSet.ALL_BSD]
        assert (writer.root / "results" / "regression_reg.csv").exists()
        assert result.full_importance
        assert (writer.root / "results" / "regression_reg_full_importance.csv").exists()
        assert (writer.root / "figures" / "regression_reg_full_importance.svg").exists()

    def test_full_feature_ranking_puts_regulator_and_rank_first(self, fast_train_config):
        # sqrt|Sha| is driven only by rank and by the regulator crossing 1.
        rng = make_rng(11, "importance")
        records = []
        for i in range(400):
            rank = 1 + i % 2
            regulator = float(np.exp(rng.uniform(-2.0, 2.0)))
            root = 1 + (rank == 2) + (regulator > 1.0)
            records.append(
                CurveRecord(
                    label=f"imp.{i}",
                    conductor=int(rng.integers(11, 500_000)),
                    rank=rank,
                    torsion_order=int(rng.integers(1, 17)),
                    real_period=float(np.exp(rng.uniform(-4.0, 2.0))),
                    regulator=regulator,
                    tamagawa_product=int(rng.integers(1, 50)),
                    special_value=float(np.exp(rng.uniform(-3.0, 3.0))),
                    sha_order=root * root,
                )
            )
        ds = Dataset(records=tuple(records), source="importance")
        ranking = full_feature_importance(ds, FeatureSpec.bsd(), fast_train_config)
        assert len(ranking) == 7
        assert {name for name, _ in ranking[:2]} == {"regulator", "rank"}

    def test_with_large_conductor_holdout(self, make_config):
        holdout = DatasetSelector(
            kind=DataSourceKind.SYNTHETIC,
            synthetic=SyntheticSpec(
                n=60,
                class_spec=THREE_CLASSES,
                seed=99,
                prime_conductor=True,
                conductor_min=600_000,
                conductor_max=3_000_000,
                label_prefix="big",
            ),
        )
        cfg = make_config("holdout", n=300, classes=THREE_CLASSES, holdout=holdout)
        result = run_regression_suite(cfg)
        report = result.get(
            RegressionFeatureSet.NO_REGULATOR_NO_RANK, EvaluationSet.LARGE_CONDUCTOR
        )
        assert report.n == 60
        assert EvaluationSet.LARGE_CONDUCTOR in result.baselines


class TestRankStratified:
    def test_reports_per_stratum_and_feature_set(self, make_config, writer):
        cfg = make_config("strat", classes=THREE_CLASSES)
        result = run_rank_stratified(cfg, writer)
        assert len(result.reports) == 2 * len(RegressionFeatureSet)
        report = result.get(RankStratum.RANK_ZERO, RegressionFeatureSet.ALL_BSD)
        assert report.n > 0
        assert (writer.root / "results" / "stratified_strat.csv").exists()

    def test_empty_stratum(self, curve_11a1):
        ds = Dataset(records=(curve_11a1,), source="rank zero only")
        assert len(stratum_dataset(ds, RankStratum.RANK_ZERO)) == 1
        with pytest.raises(EmptyStratumError):
            stratum_dataset(ds, RankStratum.POSITIVE_RANK)


# ---- Descriptive analyses ----


class TestDelaunay:
    def test_quartet_proportions(self, delaunay_dataset):
        result = run_delaunay_analysis(delaunay_dataset)
        assert result.overall_divisibility[(2, 0)] == pytest.approx(0.5)
        assert result.overall_divisibility[(3, 1)] == pytest.approx(0.5)
        assert result.overall_divisibility[(3, 0)] == 0.0
        assert result.overall_trivial == {0: 0.5, 1: 0.5}

    def test_grid_and_empty_buckets(self, delaunay_dataset):
        result = run_delaunay_analysis(delaunay_dataset)
        assert len(result.grid) == 50
        assert result.grid[0] == pytest.approx(1000.0)
        assert result.grid[-1] == pytest.approx(1005.0)
        assert result.trivial[0][0] is None
        assert result.support[0][0] == 0
        assert result.trivial[0][-1] == pytest.approx(0.5)

    def test_comparison_rows(self, delaunay_dataset):
        rows = run_delaunay_analysis(delaunay_dataset).comparison
        trivial_rank0 = next(r for r in rows if r["rank"] == 0 and r["quantity"] == "sha_trivial")
        assert trivial_rank0["heuristic"] == DELAUNAY_HEURISTIC[0][0]
        assert trivial_rank0["observed"] == pytest.approx(0.5)

    def test_conductor_grid(self):
        grid = conductor_grid(99, points=5)
        assert grid[0] == grid[-1] == pytest.approx(1000.0)

    def test_writes_tables_and_figures(self, delaunay_dataset, writer):
        run_delaunay_analysis(delaunay_dataset, writer=writer, name="quartet")
        assert (writer.root / "results" / "quartet_divisibility.csv").exists()
        assert (writer.root / "figures" / "quartet_divisibility_p2.svg").exists()
        assert (writer.root / "figures" / "quartet_trivial.svg").exists()

    def test_nothing_usable(self, curve_11a1):
        ds = Dataset(records=(curve_11a1.model_copy(update={"conductor": None}),), source="x")
        with pytest.raises(EmptyResultError):
            run_delaunay_analysis(ds)


class TestPcaAnalysis:
    def test_projection_and_correlation(self, make_config, writer):
        result = run_pca_analysis(make_config("pca", classes=THREE_CLASSES), writer)
        assert result.pca.k == 2
        first, second = result.top_ratios
        assert 0.0 < second <= first <= 1.0
        assert len(result.loadings) == 5
        assert result.correlation_features == ("real_period", "rank", "torsion_order")
        np.testing.assert_allclose(np.diag(result.correlation.matrix), 1.0)
        assert (writer.root / "figures" / "pca_pca_scatter.svg").exists()
        assert (writer.root / "results" / "pca_pca_loadings.csv").exists()


class TestSingleCurvePrediction:
    @pytest.fixture
    def trained(self, make_config, writer):
        return run_single_curve_prediction(make_config("e29", classes=THREE_CLASSES), writer)

    def test_predicts_rank_29_curve(self, trained, writer):
        models, prediction = trained
        assert prediction.label == "E29"
        assert prediction.sqrt_sha >= 1
        assert prediction.sha_order == prediction.sqrt_sha**2
        assert set(prediction.trivial_probability) == {ModelKind.GBM, ModelKind.MLP}
        assert all(0.0 < p < 1.0 for p in prediction.trivial_probability.values())
        assert "gbm_regressor" in models.reports
        assert (writer.root / "results" / "predict_e29.csv").exists()

    def test_missing_regulator(self, trained):
        models, _ = trained
        record = E29_RECORD.model_copy(update={"regulator": None})
        with pytest.raises(MissingFeatureError):
            predict_single_curve(models, record)
