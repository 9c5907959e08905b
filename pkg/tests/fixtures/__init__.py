"""Test fixtures."""

from .lmfdb_responses import MockLmfdbResponses
from .sample_curves import SampleCurves

__all__ = [
    "MockLmfdbResponses",
    "SampleCurves",
]
