"""Curve data schemas."""

import math
from collections.abc import Iterator
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..utils.rng import U64_MAX

AP_COUNT = 100
REGULATOR_RANK_ZERO_RTOL = 1e-12
SCHEMA_VERSION = 1


def is_perfect_square(value: int) -> bool:
    """True for 1, 4, 9, ...; False for non-positive values."""
    return value >= 1 and math.isqrt(value) ** 2 == value


class CurveExtras(BaseModel):
    """Auxiliary integer invariants carried as one optional CSV group."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    adelic_level: int
    adelic_index: int
    adelic_genus: int
    kodaira_encoded: int


class CurveRecord(BaseModel):
    """One elliptic curve's invariants.

    BSD features are optional so that prediction targets (no special value,
    no |Sha|) can be represented; operations that need them raise
    MissingFeatureError.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str = Field(..., min_length=1, description="LMFDB label, e.g. '11.a1'")
    conductor: Optional[int] = Field(None, gt=0)
    rank: int = Field(..., ge=0)
    torsion_order: Optional[int] = Field(None, ge=1)
    real_period: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    regulator: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    tamagawa_product: Optional[int] = Field(None, ge=1)
    special_value: Optional[float] = Field(
        None, gt=0, allow_inf_nan=False, description="L^(r)(E,1)/r!"
    )
    sha_order: Optional[int] = Field(None, ge=1, description="|Sha(E/Q)|, a perfect square")
    ap_values: Optional[tuple[int, ...]] = Field(None, description="a_p for the first 100 primes")
    extras: Optional[CurveExtras] = None

    @model_validator(mode="before")
    @classmethod
    def _snap_rank_zero_regulator(cls, data: Any) -> Any:
        """Rank-0 regulators within 1e-12 of 1 are stored as exactly 1."""
        if isinstance(data, dict):
            rank, reg = data.get("rank"), data.get("regulator")
            if rank == 0 and isinstance(reg, (int, float)) and reg != 1.0:
                if abs(reg - 1.0) <= REGULATOR_RANK_ZERO_RTOL:
                    data = {**data, "regulator": 1.0}
        return data

    @model_validator(mode="after")
    def _check_invariants(self) -> "CurveRecord":
        violations = invariant_violations(self)
        if violations:
            raise ValueError("; ".join(violations))
        return self

    def feature(self, name: str) -> float | None:
        """Scalar feature value by name (extras included); None when absent."""
        if self.extras is not None and name in CurveExtras.model_fields:
            return float(getattr(self.extras, name))
        value = getattr(self, name, None)
        return None if value is None else float(value)


def invariant_violations(rec: CurveRecord) -> list[str]:
    """List every type invariant the record breaks (empty when valid)."""
    problems: list[str] = []
    if rec.sha_order is not None and not is_perfect_square(rec.sha_order):
        problems.append(f"sha_order {rec.sha_order} is not a perfect square")
    if rec.rank == 0 and rec.regulator is not None:
        if abs(rec.regulator - 1.0) > REGULATOR_RANK_ZERO_RTOL:
            problems.append(f"rank 0 requires regulator 1, got {rec.regulator!r}")
    for name in ("real_period", "special_value", "regulator"):
        value = getattr(rec, name)
        if value is not None and not (math.isfinite(value) and value > 0):
            problems.append(f"{name} must be positive and finite, got {value!r}")
    for name in ("torsion_order", "tamagawa_product", "conductor"):
        value = getattr(rec, name)
        if value is not None and value < 1:
            problems.append(f"{name} must be >= 1, got {value!r}")
    if rec.rank < 0:
        problems.append(f"rank must be non-negative, got {rec.rank}")
    if rec.ap_values is not None and len(rec.ap_values) != AP_COUNT:
        problems.append(f"ap_values must have {AP_COUNT} entries, got {len(rec.ap_values)}")
    return problems


class Dataset(BaseModel):
    """Ordered collection of curve records with provenance."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    records: tuple[CurveRecord, ...] = Field(default_factory=tuple)
    source: str = Field(..., description="File path, API query or synthetic seed tag")
    schema_version: int = SCHEMA_VERSION
    seed: Optional[int] = Field(None, ge=0, le=U64_MAX)

    @model_validator(mode="after")
    def _unique_labels(self) -> "Dataset":
        seen: set[str] = set()
        for rec in self.records:
            if rec.label in seen:
                raise ValueError(f"duplicate label {rec.label!r}")
            seen.add(rec.label)
        return self

    def __len__(self) -> int:
        return len(self.records)

    def iter_records(self) -> Iterator[CurveRecord]:
        return iter(self.records)

    @property
    def labels(self) -> list[str]:
        return [rec.label for rec in self.records]

    def has_ap_values(self) -> bool:
        return bool(self.records) and all(rec.ap_values is not None for rec in self.records)

    def with_records(
        self, records: list[CurveRecord] | tuple[CurveRecord, ...], source: str | None = None
    ) -> "Dataset":
        """Derived dataset over a subset/reordering of this dataset's records.

        Built through the constructor so the label checks run again.
        """
        return Dataset(
            records=tuple(records),
            source=source or self.source,
            schema_version=self.schema_version,
            seed=self.seed,
        )


class SplitSpec(BaseModel):
    """Seeded train/test split parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    test_fraction: float = Field(0.2, gt=0.0, lt=1.0)
    seed: int = Field(0, ge=0, le=U64_MAX)


class ValidationReport(BaseModel):
    """Outcome of validating one record."""

    label: str
    passed: bool
    reasons: list[str] = Field(default_factory=list)
    computed_sha: Optional[float] = None
    relative_error: Optional[float] = None


class RowRejection(BaseModel):
    """A CSV row dropped during ingestion."""

    row: int = Field(..., description="0-based data row index")
    label: Optional[str] = None
    reasons: list[str] = Field(default_factory=list)
