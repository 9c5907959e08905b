"""Curves shipped inside the package.

``data/lmfdb_curated.csv`` holds LMFDB curves of rank 0 to 3 whose BSD
invariants were checked against the identity to 1e-14. It is small enough to
load in every test run; larger extracts are frozen with ``sha-lab ingest``.
"""

from pathlib import Path

from ..core.schemas.curves import Dataset
from .csv_io import load_csv

DATA_DIR = Path(__file__).parent.parent / "data"
BUNDLED_SAMPLE = "lmfdb_curated.csv"


def bundled_sample_path() -> Path:
    return DATA_DIR / BUNDLED_SAMPLE


def load_bundled_sample(tolerance: float | None = None) -> Dataset:
    """The curated LMFDB sample.

    Raises:
        InvariantViolationError: A shipped row fails validation
    """
    return load_csv(bundled_sample_path(), tolerance=tolerance, strict=True)
