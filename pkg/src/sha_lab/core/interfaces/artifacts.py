"""Artifact writer interface."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

from ..schemas.manifest import RunManifest
from ..schemas.plots import PlotSpec


class IArtifactWriter(ABC):
    """Sink for experiment outputs (tables, figures, manifests)."""

    @abstractmethod
    def write_table(self, name: str, rows: list[dict[str, Any]]) -> Path:
        """Write ``results/<name>.csv`` and return its path."""
        ...

    @abstractmethod
    def write_figure(self, name: str, spec: PlotSpec) -> Path:
        """Write ``figures/<name>.svg`` and return its path."""
        ...

    @abstractmethod
    def write_manifest(self, manifest: RunManifest) -> Path:
        """Write ``manifests/<run_id>.json`` and return its path."""
        ...

    @property
    @abstractmethod
    def written(self) -> list[Path]:
        """Paths written so far, in write order."""
        ...
