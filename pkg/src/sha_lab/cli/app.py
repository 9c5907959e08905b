"""Command-line dispatcher.

Every subcommand is a thin shell over a library call: it resolves the
experiment config (file plus flag overrides), runs the computation, and
prints a one-line JSON summary on stdout. Logs go to stderr.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from ..config import Settings, get_settings
from ..core.enums import DataSourceKind
from ..core.error_mapper import EXIT_FAILURE, EXIT_OK, ErrorMapper
from ..core.exceptions import ConfigError, UsageError
from ..core.schemas.curves import CurveRecord
from ..core.schemas.experiments import DatasetSelector, ExperimentConfig, LmfdbQuery
from ..core.schemas.manifest import RunManifest
from ..curvedata.csv_io import read_csv_report, save_dataset
from ..curvedata.synthetic import synthesize_dataset
from ..experiments.ablation import run_remove_one_ablation
from ..experiments.ap_comparison import run_ap_comparison
from ..experiments.benchmark import run_all_bsd_benchmark
from ..experiments.constants import E29_RECORD
from ..experiments.datasets import load_selector
from ..experiments.delaunay import run_delaunay_experiment
from ..experiments.pca_analysis import run_pca_analysis
from ..experiments.regression import run_regression_suite
from ..experiments.single_curve import run_single_curve_prediction
from ..experiments.stratified import run_rank_stratified
from ..observability.logger import clear_run_context, get_logger, setup_logging
from .report import write_summary
from .writer import DirectoryArtifactWriter

logger = get_logger(__name__)

DATA_DIR = "data"

Handler = Callable[[argparse.Namespace, Settings], int]


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Experiment config or run manifest (JSON)")
    common.add_argument("--in", dest="input", type=Path, help="Input CSV dataset")
    common.add_argument("--out", type=Path, help="Output directory")
    common.add_argument("--seed", type=int, help="Override split and training seeds")
    common.add_argument("--threads", type=int, help="Worker threads for independent work")
    common.add_argument("--tol", type=float, help="Relative BSD-consistency tolerance")
    common.add_argument(
        "--download", action="store_true", help="Allow network fetches from the LMFDB API"
    )
    return common


def build_arg_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="sha-lab",
        description="Predict |Sha| from BSD invariants and run the experiment suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    ingest = sub.add_parser("ingest", parents=[common], help="CSV or LMFDB -> validated dataset")
    ingest.add_argument("--conductor-min", type=int)
    ingest.add_argument("--conductor-max", type=int)
    ingest.add_argument("--rank", type=int)
    ingest.add_argument("--sha", type=int, help="|Sha| value to fetch")
    ingest.add_argument("--limit", type=int, default=1000)

    synth = sub.add_parser("synth", parents=[common], help="Generate a BSD-consistent dataset")
    synth.add_argument("--n", type=int, default=10_000)
    synth.add_argument(
        "--classes", default="4:1,9:1", help="|Sha| values with weights, e.g. '4:1,9:1'"
    )
    synth.add_argument("--ap", action="store_true", help="Also generate a_p values")

    sub.add_parser("validate", parents=[common], help="Check a CSV against the BSD identity")

    for name, text in (
        ("ablate", "Remove-one-feature ablation grid"),
        ("apcompare", "Network ablation with and without a_p values"),
        ("regress", "sqrt|Sha| regression suite"),
        ("stratify", "Rank-stratified regression"),
        ("delaunay", "Empirical divisibility proportions"),
        ("pca", "PCA and correlation analysis"),
        ("benchmark", "All-BSD-features baseline models"),
    ):
        sub.add_parser(name, parents=[common], help=text)

    predict = sub.add_parser("predict", parents=[common], help="Predict |Sha| for one curve")
    predict.add_argument(
        "--record", type=Path, help="CurveRecord JSON (defaults to the rank-29 curve)"
    )

    sub.add_parser("report", parents=[common], help="Aggregate manifests into summary.csv")
    return parser


def _emit(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True, default=str))


def _config_help() -> str:
    fields = ", ".join(ExperimentConfig.model_fields)
    return f"experiment config fields: {fields}"


def load_config(path: Path) -> tuple[ExperimentConfig, Optional[RunManifest]]:
    """
    Read an experiment config, or the config embedded in a run manifest.

    Raises:
        ConfigError: Unreadable file, invalid JSON, or a schema violation
    """
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}", {"path": str(path)}) from e
    try:
        if isinstance(payload, dict) and "run_id" in payload:
            manifest = RunManifest.model_validate(payload)
            if manifest.config is None:
                raise ConfigError(f"manifest {path} carries no config", {"path": str(path)})
            return manifest.config, manifest
        return ExperimentConfig.model_validate(payload), None
    except ValidationError as e:
        raise ConfigError(
            f"invalid config {path}: {e.error_count()} error(s)\n{e}\n{_config_help()}",
            {"path": str(path)},
        ) from e


def resolve_config(args: argparse.Namespace) -> tuple[ExperimentConfig, int]:
    """Config file (or a default over ``--in``) with flag overrides, plus the thread count."""
    manifest: Optional[RunManifest] = None
    if args.config is not None:
        cfg, manifest = load_config(args.config)
    elif args.input is not None:
        cfg = ExperimentConfig(
            name=args.command, dataset=DatasetSelector(kind=DataSourceKind.CSV, path=args.input)
        )
    else:
        raise UsageError(f"{args.command} needs --config or --in\n{_config_help()}")

    update: dict[str, Any] = {}
    if args.config is not None and args.input is not None:
        update["dataset"] = DatasetSelector(kind=DataSourceKind.CSV, path=args.input)
    if args.seed is not None:
        update["split"] = cfg.split.model_copy(update={"seed": args.seed})
        update["train"] = cfg.train.model_copy(update={"seed": args.seed})
    if args.out is not None:
        update["output_dir"] = args.out
    if args.tol is not None:
        if args.tol <= 0:
            raise UsageError(f"--tol must be positive, got {args.tol}")
        dataset = update.get("dataset", cfg.dataset)
        update["dataset"] = dataset.model_copy(update={"tolerance": args.tol})
        if cfg.holdout is not None:
            update["holdout"] = cfg.holdout.model_copy(update={"tolerance": args.tol})
    if update:
        cfg = cfg.model_copy(update=update)

    if args.threads is not None:
        threads = args.threads
    else:
        threads = manifest.threads if manifest is not None else cfg.threads
    if threads < 1:
        raise UsageError(f"--threads must be positive, got {threads}")
    return cfg, threads


def _run_experiment(args: argparse.Namespace, settings: Settings) -> int:
    cfg, threads = resolve_config(args)
    writer = DirectoryArtifactWriter(cfg.output_dir)
    download = bool(args.download)
    command: str = args.command
    if command == "ablate":
        run_remove_one_ablation(cfg, writer, allow_download=download, threads=threads)
    elif command == "apcompare":
        run_ap_comparison(cfg, writer, allow_download=download, threads=threads)
    elif command == "regress":
        run_regression_suite(cfg, writer, allow_download=download, threads=threads)
    elif command == "stratify":
        run_rank_stratified(cfg, writer, allow_download=download, threads=threads)
    elif command == "delaunay":
        run_delaunay_experiment(cfg, writer, allow_download=download)
    elif command == "pca":
        run_pca_analysis(cfg, writer, allow_download=download)
    elif command == "benchmark":
        run_all_bsd_benchmark(cfg, writer, allow_download=download, threads=threads)
    elif command == "predict":
        record = _read_record(args.record) if args.record is not None else E29_RECORD
        _, prediction = run_single_curve_prediction(
            cfg, writer, record, allow_download=download, threads=threads
        )
        _emit({"command": command, "prediction": prediction.to_row()})
        return EXIT_OK
    _emit({"command": command, "outputs": [str(p) for p in writer.written]})
    return EXIT_OK


def _read_record(path: Path) -> CurveRecord:
    try:
        return CurveRecord.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        raise ConfigError(f"invalid curve record {path}: {e}", {"path": str(path)}) from e


def _out_dir(args: argparse.Namespace, settings: Settings) -> Path:
    return Path(args.out) if args.out is not None else settings.output_dir


def _ingest(args: argparse.Namespace, settings: Settings) -> int:
    tol = args.tol if args.tol is not None else settings.bsd_tolerance
    rejected = 0
    if args.input is not None:
        result = read_csv_report(args.input, tolerance=tol)
        ds, rejected = result.dataset, len(result.rejected)
    elif args.config is not None:
        cfg, _ = load_config(args.config)
        ds = load_selector(cfg.dataset, bool(args.download), settings)
    else:
        if not args.download:
            raise UsageError("ingest from the LMFDB API needs --download (or use --in)")
        query = LmfdbQuery(
            conductor_min=args.conductor_min,
            conductor_max=args.conductor_max,
            rank=args.rank,
            sha_order=args.sha,
        )
        selector = DatasetSelector(kind=DataSourceKind.LMFDB, query=query, limit=args.limit)
        ds = load_selector(selector, True, settings)
    path = save_dataset(ds, _out_dir(args, settings) / DATA_DIR / "dataset.csv")
    _emit({"command": "ingest", "records": len(ds), "rejected": rejected, "path": str(path)})
    return EXIT_OK


def parse_class_spec(text: str) -> dict[int, float]:
    """'4:1,9:2' -> {4: 1.0, 9: 2.0}; a bare value gets weight 1."""
    spec: dict[int, float] = {}
    try:
        for item in text.split(","):
            value, _, weight = item.strip().partition(":")
            spec[int(value)] = float(weight) if weight else 1.0
    except ValueError as e:
        raise UsageError(f"invalid --classes {text!r}; expected e.g. '4:1,9:1'") from e
    return spec


def _synth(args: argparse.Namespace, settings: Settings) -> int:
    ds = synthesize_dataset(
        args.n, parse_class_spec(args.classes), args.seed or 0, include_ap=bool(args.ap)
    )
    path = save_dataset(ds, _out_dir(args, settings) / DATA_DIR / "synthetic.csv")
    _emit({"command": "synth", "records": len(ds), "path": str(path)})
    return EXIT_OK


def _validate(args: argparse.Namespace, settings: Settings) -> int:
    if args.input is None:
        raise UsageError("validate needs --in <csv>")
    tol = args.tol if args.tol is not None else settings.bsd_tolerance
    result = read_csv_report(args.input, tolerance=tol)
    total = len(result.dataset) + len(result.rejected)
    _emit(
        {
            "command": "validate",
            "rows": total,
            "passed": len(result.dataset),
            "rejected": len(result.rejected),
            "pass_rate": len(result.dataset) / total if total else 1.0,
            "failures": [r.model_dump() for r in result.rejected[:20]],
        }
    )
    return EXIT_OK if not result.rejected else EXIT_FAILURE


def _report(args: argparse.Namespace, settings: Settings) -> int:
    path = write_summary(_out_dir(args, settings))
    _emit({"command": "report", "path": str(path)})
    return EXIT_OK


_HANDLERS: dict[str, Handler] = {
    "ingest": _ingest,
    "synth": _synth,
    "validate": _validate,
    "report": _report,
}


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        0 on success, 1 on data or validation failure, 2 on usage error
    """
    settings = get_settings()
    setup_logging(settings.log_level)
    try:
        args = build_arg_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_FAILURE

    handler = _HANDLERS.get(args.command, _run_experiment)
    try:
        return handler(args, settings)
    except Exception as e:
        code, message = ErrorMapper.to_exit_code(e)
        logger.error("Command failed", command=args.command, error=type(e).__name__, exc_info=e)
        print(message, file=sys.stderr)
        return code
    finally:
        clear_run_context()
