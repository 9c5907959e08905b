"""Evaluation and experiment result schemas."""

from typing import Optional

from pydantic import BaseModel, Field, model_validator

from ..enums import ModelKind, Transform


class ThresholdPoint(BaseModel):
    """Accuracy restricted to rows whose true sqrt|Sha| is at least ``threshold``."""

    threshold: float
    accuracy: Optional[float] = Field(None, description="Absent when support is 0")
    support: int = Field(..., ge=0)


class EvaluationReport(BaseModel):
    """Metrics for one model/dataset pair."""

    accuracy: float = Field(..., ge=0.0, le=1.0)
    mcc: float = Field(..., ge=-1.0, le=1.0, description="Binary (or trivial-vs-nontrivial) MCC")
    mcc_multiclass: Optional[float] = Field(
        None, ge=-1.0, le=1.0, description="Exact-class MCC for multi-valued targets"
    )
    labels: list[int] = Field(default_factory=list)
    confusion: list[list[int]] = Field(
        default_factory=list, description="Rows = truth, columns = prediction, ordered by labels"
    )
    n: int = Field(..., ge=1)
    threshold_curve: Optional[list[ThresholdPoint]] = None

    @model_validator(mode="after")
    def _confusion_consistent(self) -> "EvaluationReport":
        if self.confusion:
            total = sum(sum(row) for row in self.confusion)
            if total != self.n:
                raise ValueError(f"confusion sums to {total}, expected n={self.n}")
            trace = sum(self.confusion[i][i] for i in range(len(self.confusion)))
            if abs(trace / self.n - self.accuracy) > 1e-12:
                raise ValueError("accuracy does not equal trace / n")
        return self


class AblationCell(BaseModel):
    """One (model, transform, deleted feature) test accuracy."""

    model: ModelKind
    transform: Transform
    deleted_feature: Optional[str] = Field(None, description="None = all features kept")
    accuracy: Optional[float] = Field(None, ge=0.0, le=1.0)
    final_accuracy: Optional[float] = Field(
        None, ge=0.0, le=1.0, description="Last-epoch accuracy for networks"
    )
    error: Optional[str] = None


class AblationResult(BaseModel):
    """Grid of remove-one-feature accuracies."""

    experiment: str
    features: list[str]
    cells: list[AblationCell] = Field(default_factory=list)

    def get(
        self, model: ModelKind, transform: Transform, deleted: Optional[str] = None
    ) -> AblationCell | None:
        for cell in self.cells:
            if (cell.model, cell.transform, cell.deleted_feature) == (model, transform, deleted):
                return cell
        return None

    @property
    def is_complete(self) -> bool:
        return all(cell.accuracy is not None or cell.error for cell in self.cells)
