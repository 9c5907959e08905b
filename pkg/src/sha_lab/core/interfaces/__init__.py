"""Abstract interfaces."""

from .artifacts import IArtifactWriter
from .model import IModel
from .validator import IRecordValidator, RecordCheckResult

__all__ = [
    "IArtifactWriter",
    "IModel",
    "IRecordValidator",
    "RecordCheckResult",
]
