"""Experiment configuration schemas."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..enums import DataSourceKind, ModelKind
from ..utils.hashing import canonical_json, sha256_hex
from ..utils.rng import U64_MAX
from .curves import SplitSpec
from .features import FeatureSpec
from .training import TrainConfig


class LmfdbQuery(BaseModel):
    """Filter for the LMFDB elliptic-curve tables."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: Optional[str] = None
    conductor_min: Optional[int] = Field(None, ge=1)
    conductor_max: Optional[int] = Field(None, ge=1)
    rank: Optional[int] = Field(None, ge=0)
    sha_order: Optional[int] = Field(None, ge=1)


class SyntheticSpec(BaseModel):
    """Parameters of the BSD-consistent synthetic generator."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(..., ge=1)
    class_spec: dict[int, float] = Field(
        ..., description="|Sha| value -> relative weight; counts allocated by largest remainder"
    )
    seed: int = Field(0, ge=0, le=U64_MAX)
    include_ap: bool = False
    rank_weights: tuple[float, ...] = (0.6, 0.3, 0.1)
    conductor_min: int = Field(11, ge=1)
    conductor_max: int = Field(500_000, ge=1)
    prime_conductor: bool = False
    label_prefix: str = "syn"


class DatasetSelector(BaseModel):
    """Where to read curves from."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: DataSourceKind = DataSourceKind.BUNDLED
    path: Optional[Path] = None
    query: Optional[LmfdbQuery] = None
    limit: int = Field(1000, ge=0)
    synthetic: Optional[SyntheticSpec] = None
    tolerance: Optional[float] = Field(
        None, gt=0, description="Relative BSD tolerance for CSV rows (default: settings)"
    )

    @model_validator(mode="after")
    def _source_fields_present(self) -> "DatasetSelector":
        if self.kind == DataSourceKind.CSV and self.path is None:
            raise ValueError("csv selector requires 'path'")
        if self.kind == DataSourceKind.LMFDB and self.query is None:
            raise ValueError("lmfdb selector requires 'query'")
        if self.kind == DataSourceKind.SYNTHETIC and self.synthetic is None:
            raise ValueError("synthetic selector requires 'synthetic'")
        return self


class ClassFilter(BaseModel):
    """Record selection applied after loading."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    sha_orders: Optional[list[int]] = None
    min_rank: Optional[int] = Field(None, ge=0)
    max_rank: Optional[int] = Field(None, ge=0)
    min_conductor: Optional[int] = Field(None, ge=1)
    max_conductor: Optional[int] = Field(None, ge=1)
    prime_conductor_only: bool = False
    top_sha_values: Optional[int] = Field(
        None, ge=1, description="Keep curves whose |Sha| is among the k largest values"
    )
    balance: bool = Field(True, description="Balance classes over sha_orders")


class ExperimentConfig(BaseModel):
    """Fully serializable description of one experiment run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., min_length=1)
    dataset: DatasetSelector = Field(default_factory=DatasetSelector)
    holdout: Optional[DatasetSelector] = Field(
        None, description="Fully held-out evaluation set (large conductors)"
    )
    holdout_filter: ClassFilter = Field(
        default_factory=lambda: ClassFilter(
            min_conductor=500_001,
            max_conductor=300_000_000,
            prime_conductor_only=True,
            balance=False,
        )
    )
    class_filter: ClassFilter = Field(default_factory=ClassFilter)
    features: FeatureSpec = Field(default_factory=FeatureSpec)
    model: ModelKind = ModelKind.GBM
    train: TrainConfig = Field(default_factory=TrainConfig)
    split: SplitSpec = Field(default_factory=SplitSpec)
    thresholds: Optional[list[float]] = Field(
        None, description="sqrt|Sha| thresholds for accuracy curves (default 1..max)"
    )
    conductor_grid_points: int = Field(50, ge=2)
    output_dir: Path = Path("runs")
    threads: int = Field(1, ge=1)

    @property
    def seed(self) -> int:
        return self.split.seed

    def identity(self) -> str:
        """Run identity: hash of everything that can change the results."""
        payload = self.model_dump(mode="json", exclude={"output_dir", "threads"})
        return sha256_hex(canonical_json(payload))

    def run_id(self, command: str) -> str:
        """Manifest id for one subcommand over this config."""
        payload = {"command": command, "config": self.identity()}
        return sha256_hex(canonical_json(payload))[:16]
