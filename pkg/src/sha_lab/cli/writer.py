"""Filesystem artifact sink: results/, figures/ and manifests/ under one directory."""

import threading
from pathlib import Path
from typing import Any

import pandas as pd

from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.manifest import RunManifest
from ..core.schemas.plots import PlotSpec
from ..observability.logger import get_logger
from .plots import emit_svg

logger = get_logger(__name__)

RESULTS_DIR = "results"
FIGURES_DIR = "figures"
MANIFESTS_DIR = "manifests"


class DirectoryArtifactWriter(IArtifactWriter):
    """Writes every artifact below ``root``; writes are serialized by a lock."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._lock = threading.Lock()
        self._written: list[Path] = []

    def _target(self, subdir: str, filename: str) -> Path:
        path = self.root / subdir / filename
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def _record(self, path: Path) -> Path:
        self._written.append(path)
        logger.debug("Artifact written", path=str(path))
        return path

    def write_table(self, name: str, rows: list[dict[str, Any]]) -> Path:
        with self._lock:
            path = self._target(RESULTS_DIR, f"{name}.csv")
            pd.DataFrame(rows).to_csv(path, index=False, lineterminator="\n")
            return self._record(path)

    def write_figure(self, name: str, spec: PlotSpec) -> Path:
        with self._lock:
            path = emit_svg(spec, self._target(FIGURES_DIR, f"{name}.svg"))
            return self._record(path)

    def write_manifest(self, manifest: RunManifest) -> Path:
        with self._lock:
            path = self._target(MANIFESTS_DIR, f"{manifest.run_id}.json")
            path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
            return self._record(path)

    @property
    def written(self) -> list[Path]:
        return list(self._written)
