"""CSV ingestion and serialization of curve datasets.

Schema (header required, UTF-8, '.' decimal separator)::

    label,conductor,rank,torsion_order,real_period,regulator,tamagawa_product,
    special_value,sha_order[,ap_2,...,ap_541][,adelic_level,adelic_index,
    adelic_genus,kodaira_encoded]

The a_p and extras groups are optional, but only as whole groups. Datasets are
saved in the same schema next to a ``<stem>.meta.json`` sidecar holding the
provenance fields.
"""

import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import ValidationError

from ..core.exceptions import InvariantViolationError, MissingColumnError, ParseError
from ..core.schemas.curves import SCHEMA_VERSION, CurveRecord, Dataset, RowRejection
from ..core.schemas.manifest import DatasetFingerprint
from ..core.utils.hashing import sha256_hex
from ..core.utils.primes import FIRST_100_PRIMES
from ..observability.logger import get_logger
from .bsd import validate_record

logger = get_logger(__name__)

REQUIRED_COLUMNS: tuple[str, ...] = (
    "label",
    "conductor",
    "rank",
    "torsion_order",
    "real_period",
    "regulator",
    "tamagawa_product",
    "special_value",
    "sha_order",
)
AP_COLUMNS: tuple[str, ...] = tuple(f"ap_{p}" for p in FIRST_100_PRIMES)
EXTRA_COLUMNS: tuple[str, ...] = ("adelic_level", "adelic_index", "adelic_genus", "kodaira_encoded")

_INT_COLUMNS = {"conductor", "rank", "torsion_order", "tamagawa_product", "sha_order"}
# Blank allowed: prediction targets lack |Sha| and sometimes the special value.
_BLANK_OK = {"conductor", "special_value", "sha_order"}


@dataclass
class IngestResult:
    """A parsed dataset plus the rows rejected on the way."""

    dataset: Dataset
    rejected: list[RowRejection] = field(default_factory=list)


def _parse_int(text: str) -> int:
    return int(text.strip())


def _parse_float(text: str) -> float:
    return float(text.strip())


def _parse_required(row_index: int, column: str, text: str) -> Any:
    if text.strip() == "":
        if column in _BLANK_OK:
            return None
        raise ParseError(row_index, column, text)
    if column == "label":
        return text.strip()
    try:
        return _parse_int(text) if column in _INT_COLUMNS else _parse_float(text)
    except ValueError as exc:
        raise ParseError(row_index, column, text) from exc


def _parse_optional_ints(row: dict[str, str], columns: tuple[str, ...]) -> list[int] | None:
    """All-or-nothing parse of an optional integer group."""
    try:
        return [_parse_int(row[c]) for c in columns]
    except ValueError:
        return None


def _check_group(header: set[str], columns: tuple[str, ...], path: str) -> bool:
    present = [c for c in columns if c in header]
    if not present:
        return False
    missing = [c for c in columns if c not in header]
    if missing:
        raise MissingColumnError(missing[0], path)
    return True


def _read_sidecar(path: Path) -> dict[str, Any]:
    sidecar = sidecar_path(path)
    if not sidecar.exists():
        return {}
    meta: dict[str, Any] = json.loads(sidecar.read_text(encoding="utf-8"))
    return meta


def sidecar_path(path: Path) -> Path:
    """``data/curves.csv`` -> ``data/curves.meta.json``."""
    return path.with_name(f"{path.stem}.meta.json")


def read_csv_report(path: str | Path, tolerance: float | None = None) -> IngestResult:
    """Parse a curve CSV, keeping rejected rows and their reasons.

    Args:
        path: CSV file
        tolerance: When given, rows failing the BSD consistency check at this
            relative tolerance are rejected too

    Raises:
        MissingColumnError: A required column (or part of an optional group) is absent
        ParseError: A required cell cannot be parsed
    """
    path = Path(path)
    frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    header = set(frame.columns)
    for column in REQUIRED_COLUMNS:
        if column not in header:
            raise MissingColumnError(column, str(path))
    has_ap = _check_group(header, AP_COLUMNS, str(path))
    has_extras = _check_group(header, EXTRA_COLUMNS, str(path))

    records: list[tuple[int, CurveRecord]] = []
    rejected: list[RowRejection] = []
    for row_index, row in enumerate(frame.to_dict(orient="records")):
        data: dict[str, Any] = {c: _parse_required(row_index, c, row[c]) for c in REQUIRED_COLUMNS}
        if has_ap:
            ap = _parse_optional_ints(row, AP_COLUMNS)
            data["ap_values"] = tuple(ap) if ap is not None else None
        if has_extras:
            extras = _parse_optional_ints(row, EXTRA_COLUMNS)
            data["extras"] = dict(zip(EXTRA_COLUMNS, extras)) if extras is not None else None

        try:
            record = CurveRecord.model_validate(data)
        except ValidationError as exc:
            reasons = [err["msg"] for err in exc.errors()]
            rejected.append(RowRejection(row=row_index, label=data.get("label"), reasons=reasons))
            continue

        if tolerance is not None:
            report = validate_record(record, tolerance)
            if not report.passed:
                rejected.append(
                    RowRejection(row=row_index, label=record.label, reasons=report.reasons)
                )
                continue
        records.append((row_index, record))

    labels_seen: set[str] = set()
    unique: list[CurveRecord] = []
    for row_index, record in records:
        if record.label in labels_seen:
            rejected.append(
                RowRejection(row=row_index, label=record.label, reasons=["duplicate label"])
            )
            continue
        labels_seen.add(record.label)
        unique.append(record)

    meta = _read_sidecar(path)
    dataset = Dataset(
        records=tuple(unique),
        source=meta.get("source", str(path)),
        schema_version=meta.get("schema_version", SCHEMA_VERSION),
        seed=meta.get("seed"),
    )
    logger.info(
        "Loaded curve CSV",
        path=str(path),
        records=len(dataset),
        rejected=len(rejected),
        has_ap=has_ap,
        has_extras=has_extras,
    )
    return IngestResult(dataset=dataset, rejected=rejected)


def load_csv(path: str | Path, tolerance: float | None = None, strict: bool = False) -> Dataset:
    """Load a curve CSV; invalid rows are dropped (or fatal when ``strict``).

    Raises:
        InvariantViolationError: ``strict`` and at least one row was rejected
    """
    result = read_csv_report(path, tolerance)
    if result.rejected:
        logger.warning("Rejected rows during ingestion", path=str(path), count=len(result.rejected))
        if strict:
            violations = [
                f"row {r.row} ({r.label}): {'; '.join(r.reasons)}" for r in result.rejected
            ]
            raise InvariantViolationError(
                f"{len(result.rejected)} row(s) violate record invariants", violations
            )
    return result.dataset


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dataset_to_frame(ds: Dataset) -> pd.DataFrame:
    """Records as a string-valued frame in the documented column order."""
    with_ap = any(rec.ap_values is not None for rec in ds.records)
    with_extras = any(rec.extras is not None for rec in ds.records)
    columns = list(REQUIRED_COLUMNS)
    if with_ap:
        columns += AP_COLUMNS
    if with_extras:
        columns += EXTRA_COLUMNS

    rows: list[dict[str, str]] = []
    for rec in ds.records:
        row = {c: _cell(getattr(rec, c)) for c in REQUIRED_COLUMNS}
        if with_ap:
            ap = rec.ap_values or ("",) * len(AP_COLUMNS)
            row.update({c: _cell(v) for c, v in zip(AP_COLUMNS, ap)})
        if with_extras:
            for c in EXTRA_COLUMNS:
                row[c] = _cell(getattr(rec.extras, c)) if rec.extras is not None else ""
        rows.append(row)
    return pd.DataFrame(rows, columns=columns, dtype=str)


def dataset_to_csv_text(ds: Dataset) -> str:
    buffer = io.StringIO()
    dataset_to_frame(ds).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def save_dataset(ds: Dataset, path: str | Path) -> Path:
    """Write ``ds`` as CSV plus its metadata sidecar; returns the CSV path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dataset_to_csv_text(ds), encoding="utf-8")
    meta = {"source": ds.source, "seed": ds.seed, "schema_version": ds.schema_version}
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True), encoding="utf-8")
    logger.info("Saved dataset", path=str(path), records=len(ds))
    return path


def dataset_fingerprint(ds: Dataset) -> DatasetFingerprint:
    """Row count plus SHA-256 of the canonical CSV serialization."""
    return DatasetFingerprint(rows=len(ds), sha256=sha256_hex(dataset_to_csv_text(ds)))
