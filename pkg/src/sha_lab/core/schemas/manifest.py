"""Run manifest schema."""

from datetime import datetime
from typing import Optional

from pydantic import BaseModel, Field

from .experiments import ExperimentConfig


class DatasetFingerprint(BaseModel):
    """Row count and content hash of the dataset a run consumed."""

    rows: int = Field(..., ge=0)
    sha256: str


class RunManifest(BaseModel):
    """Everything needed to re-execute a run and compare its metrics."""

    run_id: str = Field(..., description="Hash of the experiment config (seed included)")
    experiment: str
    command: str
    seed: int
    tool_version: str
    dataset: Optional[DatasetFingerprint] = None
    metrics: dict[str, float] = Field(default_factory=dict)
    rows: list[dict[str, str | float | int | None]] = Field(
        default_factory=list, description="Summary rows: experiment, feature_set, accuracy, mcc, n"
    )
    outputs: list[str] = Field(default_factory=list)
    threads: int = 1
    config: Optional[ExperimentConfig] = None
    started_at: datetime
    finished_at: datetime
