"""Tests for the command-line dispatcher, artifact writer and SVG output."""

import json
from pathlib import Path

import pandas as pd
import pytest

from sha_lab.cli.app import (
    build_arg_parser,
    cli_dispatch,
    load_config,
    parse_class_spec,
    resolve_config,
)
from sha_lab.cli.plots import check_plot_data, emit_svg
from sha_lab.cli.writer import DirectoryArtifactWriter
from sha_lab.core.enums import DataSourceKind, PlotKind
from sha_lab.core.exceptions import ConfigError, EmptyDataError, UsageError
from sha_lab.core.schemas.experiments import DatasetSelector
from sha_lab.core.schemas.plots import PlotSeries, PlotSpec
from sha_lab.curvedata.csv_io import REQUIRED_COLUMNS


def _stdout_json(capsys: pytest.CaptureFixture[str]) -> dict:
    lines = [line for line in capsys.readouterr().out.splitlines() if line.strip()]
    return json.loads(lines[-1])


def _line_spec(**updates) -> PlotSpec:
    payload = {
        "kind": PlotKind.LINE,
        "title": "accuracy",
        "series": [PlotSeries(name="a", x=[1.0, 2.0, 3.0], y=[0.5, None, 0.75])],
    }
    payload.update(updates)
    return PlotSpec(**payload)


# ---- Figures and artifacts ----


class TestPlots:
    def test_svg_is_deterministic(self, tmp_path):
        first = emit_svg(_line_spec(), tmp_path / "a.svg").read_bytes()
        second = emit_svg(_line_spec(), tmp_path / "b.svg").read_bytes()
        assert first == second
        assert first.lstrip().startswith(b"<?xml")

    @pytest.mark.parametrize(
        "spec",
        [
            _line_spec(series=[]),
            _line_spec(series=[PlotSeries(name="empty", y=[None, None])]),
            _line_spec(series=[PlotSeries(name="nan", y=[float("nan")])]),
            PlotSpec(kind=PlotKind.HEATMAP, title="cells", matrix=[]),
        ],
    )
    def test_nothing_to_draw(self, spec: PlotSpec):
        with pytest.raises(EmptyDataError):
            check_plot_data(spec)

    def test_grouped_bars_and_heatmap(self, tmp_path):
        bars = PlotSpec(
            kind=PlotKind.GROUPED_BARS,
            categories=["none", "regulator"],
            series=[PlotSeries(name="gbm", y=[0.9, None]), PlotSeries(name="mlp", y=[0.8, 0.7])],
        )
        heatmap = PlotSpec(
            kind=PlotKind.HEATMAP, categories=["a", "b"], matrix=[[1.0, -0.2], [-0.2, 1.0]]
        )
        assert emit_svg(bars, tmp_path / "bars.svg").stat().st_size > 0
        assert emit_svg(heatmap, tmp_path / "heat.svg").stat().st_size > 0


class TestDirectoryArtifactWriter:
    def test_layout(self, tmp_path):
        writer = DirectoryArtifactWriter(tmp_path)
        table = writer.write_table("scores", [{"model": "gbm", "accuracy": 0.9}])
        figure = writer.write_figure("scores", _line_spec())
        assert table == tmp_path / "results" / "scores.csv"
        assert figure == tmp_path / "figures" / "scores.svg"
        assert writer.written == [table, figure]
        assert pd.read_csv(table).to_dict("records") == [{"model": "gbm", "accuracy": 0.9}]


# ---- Argument handling ----


class TestArguments:
    def test_parse_class_spec(self):
        assert parse_class_spec("4:1,9:2") == {4: 1.0, 9: 2.0}
        assert parse_class_spec("1, 4") == {1: 1.0, 4: 1.0}

    def test_parse_class_spec_rejects_garbage(self):
        with pytest.raises(UsageError):
            parse_class_spec("four:1")

    def test_tol_reaches_dataset_and_holdout(self, tmp_path, make_config):
        holdout = DatasetSelector(kind=DataSourceKind.CSV, path=tmp_path / "big.csv")
        cfg_path = tmp_path / "tol.json"
        cfg_path.write_text(make_config(holdout=holdout).model_dump_json(), encoding="utf-8")
        argv = ["regress", "--config", str(cfg_path), "--in", "curves.csv", "--tol", "1e-3"]
        cfg, _ = resolve_config(build_arg_parser().parse_args(argv))
        assert cfg.dataset.path == Path("curves.csv")
        assert cfg.dataset.tolerance == 1e-3
        assert cfg.holdout is not None and cfg.holdout.tolerance == 1e-3

    def test_tol_must_be_positive(self, tmp_path):
        argv = ["benchmark", "--in", str(tmp_path / "x.csv"), "--tol", "0"]
        with pytest.raises(UsageError):
            resolve_config(build_arg_parser().parse_args(argv))

    def test_load_config_rejects_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_load_config_rejects_unknown_fields(self, tmp_path, make_config):
        payload = json.loads(make_config().model_dump_json())
        payload["learning_rate"] = 0.1
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)


# ---- Dispatch ----


class TestCliDispatch:
    @pytest.fixture(autouse=True)
    def _env(self, isolated_env):
        return isolated_env

    @pytest.mark.parametrize(
        "argv", [[], ["frobnicate"], ["validate", "--bogus"], ["synth", "--n", "many"]]
    )
    def test_usage_errors(self, argv: list[str]):
        assert cli_dispatch(argv) == 2

    def test_experiment_needs_input(self, capsys):
        assert cli_dispatch(["benchmark"]) == 2
        assert "usage error" in capsys.readouterr().err

    def test_validate_clean_csv(self, four_vs_nine_csv, capsys):
        assert cli_dispatch(["validate", "--in", str(four_vs_nine_csv)]) == 0
        summary = _stdout_json(capsys)
        assert summary["rows"] == 600
        assert summary["pass_rate"] == 1.0

    def test_validate_reports_failures(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        bad_row = "11.a1,11,0,5,1.26920930427955,1.0,5,0.253841860855911,2"
        path.write_text(",".join(REQUIRED_COLUMNS) + "\n" + bad_row + "\n", encoding="utf-8")
        assert cli_dispatch(["validate", "--in", str(path)]) == 1
        summary = _stdout_json(capsys)
        assert summary["rejected"] == 1
        assert summary["failures"][0]["label"] == "11.a1"

    def test_validate_needs_input(self):
        assert cli_dispatch(["validate"]) == 2

    def test_synth_writes_dataset(self, tmp_path, capsys):
        out = tmp_path / "synth-out"
        argv = ["synth", "--n", "40", "--classes", "1:1,4:1", "--seed", "3", "--out", str(out)]
        assert cli_dispatch(argv) == 0
        summary = _stdout_json(capsys)
        assert summary["records"] == 40
        assert Path(summary["path"]) == out / "data" / "synthetic.csv"
        assert (out / "data" / "synthetic.meta.json").exists()

    def test_report_without_manifests(self, tmp_path, capsys):
        assert cli_dispatch(["report", "--out", str(tmp_path / "nothing")]) == 1
        assert "data error" in capsys.readouterr().err

    def test_ingest_from_api_needs_download(self):
        assert cli_dispatch(["ingest", "--rank", "1"]) == 2

    def test_experiment_then_report(self, tmp_path, make_config, capsys):
        cfg_path = tmp_path / "benchmark.json"
        cfg_path.write_text(make_config("cli", n=200).model_dump_json(), encoding="utf-8")
        out = tmp_path / "cli-runs"

        assert cli_dispatch(["benchmark", "--config", str(cfg_path), "--out", str(out)]) == 0
        outputs = _stdout_json(capsys)["outputs"]
        assert str(out / "results" / "benchmark.csv") in outputs
        manifests = list((out / "manifests").glob("*.json"))
        assert len(manifests) == 1

        assert cli_dispatch(["report", "--out", str(out)]) == 0
        summary = pd.read_csv(out / "results" / "summary.csv")
        assert list(summary.columns) == ["experiment", "feature_set", "accuracy", "mcc", "n"]
        assert set(summary["feature_set"]) == {"logistic_raw", "logistic_log", "gbm_raw"}

    def test_commands_sharing_a_config_keep_their_manifests(self, tmp_path, make_config):
        cfg_path = tmp_path / "shared.json"
        cfg_path.write_text(make_config("shared", n=200).model_dump_json(), encoding="utf-8")
        out = tmp_path / "shared-runs"
        for command in ("benchmark", "regress"):
            argv = [command, "--config", str(cfg_path), "--out", str(out)]
            assert cli_dispatch(argv) == 0
        assert len(list((out / "manifests").glob("*.json"))) == 2

        assert cli_dispatch(["report", "--out", str(out)]) == 0
        summary = pd.read_csv(out / "results" / "summary.csv")
        assert "benchmark" in set(summary["experiment"])
        assert any(str(e).startswith("shared:") for e in summary["experiment"])

    def test_rerun_from_manifest(self, tmp_path, make_config, capsys):
        cfg_path = tmp_path / "delaunay.json"
        cfg = make_config("rerun", n=100, classes={1: 1.0, 4: 1.0, 9: 1.0})
        cfg_path.write_text(cfg.model_dump_json(), encoding="utf-8")
        out = tmp_path / "first"
        assert cli_dispatch(["delaunay", "--config", str(cfg_path), "--out", str(out)]) == 0
        manifest = next((out / "manifests").glob("*.json"))

        again = tmp_path / "second"
        assert cli_dispatch(["delaunay", "--config", str(manifest), "--out", str(again)]) == 0
        assert [p.name for p in (again / "manifests").glob("*.json")] == [manifest.name]
        first_rows = (out / "results" / "rerun_comparison.csv").read_bytes()
        assert (again / "results" / "rerun_comparison.csv").read_bytes() == first_rows
