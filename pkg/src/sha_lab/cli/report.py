"""Aggregate run manifests into one summary table."""

from pathlib import Path
from typing import Any

import pandas as pd

from ..core.exceptions import EmptyResultError
from ..core.schemas.manifest import RunManifest
from ..observability.logger import get_logger
from .writer import MANIFESTS_DIR, RESULTS_DIR

logger = get_logger(__name__)

SUMMARY_COLUMNS = ["experiment", "feature_set", "accuracy", "mcc", "n"]


def load_manifests(out_dir: str | Path) -> list[RunManifest]:
    """Every manifest under ``<out_dir>/manifests``, in file-name order."""
    paths = sorted((Path(out_dir) / MANIFESTS_DIR).glob("*.json"))
    return [RunManifest.model_validate_json(p.read_text(encoding="utf-8")) for p in paths]


def summarize(manifests: list[RunManifest]) -> list[dict[str, Any]]:
    rows = []
    for manifest in manifests:
        for row in manifest.rows:
            rows.append({column: row.get(column) for column in SUMMARY_COLUMNS})
    return rows


def write_summary(out_dir: str | Path) -> Path:
    """
    Write ``results/summary.csv`` from all manifests of a run directory.

    Raises:
        EmptyResultError: No manifest found
    """
    manifests = load_manifests(out_dir)
    if not manifests:
        raise EmptyResultError(f"No run manifests under {out_dir}", {"out_dir": str(out_dir)})
    rows = summarize(manifests)
    path = Path(out_dir) / RESULTS_DIR / "summary.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(rows, columns=SUMMARY_COLUMNS).to_csv(path, index=False, lineterminator="\n")
    logger.info("Summary written", path=str(path), manifests=len(manifests), rows=len(rows))
    return path
