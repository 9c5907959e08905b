"""Record validation interfaces."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from ..schemas.curves import CurveRecord


@dataclass
class RecordCheckResult:
    """Result from one or more validation stages."""

    errors: list[str] = field(default_factory=list)
    computed_sha: float | None = None
    relative_error: float | None = None

    @property
    def is_valid(self) -> bool:
        return len(self.errors) == 0

    def add_error(self, message: str) -> None:
        self.errors.append(message)

    def merge(self, other: "RecordCheckResult") -> None:
        """Merge another result into this one."""
        self.errors.extend(other.errors)
        if other.computed_sha is not None:
            self.computed_sha = other.computed_sha
            self.relative_error = other.relative_error


class IRecordValidator(ABC):
    """Interface for a single record validation stage."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Name of this validation stage."""
        ...

    @property
    @abstractmethod
    def is_blocking(self) -> bool:
        """If True, the pipeline stops on errors from this stage."""
        ...

    @abstractmethod
    def check(self, record: CurveRecord) -> RecordCheckResult:
        """Validate a record and return results."""
        ...
