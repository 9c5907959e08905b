"""Curve data model: ingestion, validation, sampling and synthesis."""

from .bsd import (
    DEFAULT_BSD_TOLERANCE,
    BsdConsistencyStage,
    InvariantStage,
    RecordValidationPipeline,
    compute_sha_from_bsd,
    validate_record,
)
from .bundled import bundled_sample_path, load_bundled_sample
from .csv_io import (
    AP_COLUMNS,
    EXTRA_COLUMNS,
    REQUIRED_COLUMNS,
    IngestResult,
    dataset_fingerprint,
    load_csv,
    read_csv_report,
    save_dataset,
)
from .lmfdb import LmfdbClient, fetch_lmfdb, fetch_lmfdb_async
from .sampling import apply_class_filter, balanced_subset, filter_records, train_test_split
from .synthetic import allocate_counts, synthesize_dataset, synthesize_from_spec

__all__ = [
    "AP_COLUMNS",
    "DEFAULT_BSD_TOLERANCE",
    "EXTRA_COLUMNS",
    "REQUIRED_COLUMNS",
    "BsdConsistencyStage",
    "IngestResult",
    "InvariantStage",
    "LmfdbClient",
    "RecordValidationPipeline",
    "allocate_counts",
    "apply_class_filter",
    "balanced_subset",
    "bundled_sample_path",
    "compute_sha_from_bsd",
    "dataset_fingerprint",
    "fetch_lmfdb",
    "fetch_lmfdb_async",
    "filter_records",
    "load_bundled_sample",
    "load_csv",
    "read_csv_report",
    "save_dataset",
    "synthesize_dataset",
    "synthesize_from_spec",
    "train_test_split",
    "validate_record",
]
