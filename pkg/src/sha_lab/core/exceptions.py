"""Custom exceptions for the toolkit."""

from typing import Any


class ShaLabError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


# --- usage / configuration ---


class UsageError(ShaLabError):
    """Invalid command-line usage."""

    pass


class ConfigError(ShaLabError):
    """Experiment or training configuration is invalid."""

    pass


class DegenerateConfigError(ConfigError):
    """Configuration that cannot produce a model (e.g. zero epochs)."""

    pass


# --- ingestion ---


class DataError(ShaLabError):
    """Base class for errors in curve data."""

    pass


class MissingColumnError(DataError):
    """A required CSV column is absent."""

    def __init__(self, column: str, path: str | None = None):
        super().__init__(f"Missing required column: {column}", {"column": column, "path": path})
        self.column = column


class ParseError(DataError):
    """A CSV cell could not be parsed."""

    def __init__(self, row: int, column: str, value: str):
        super().__init__(
            f"Cannot parse row {row}, column {column!r}: {value!r}",
            {"row": row, "column": column, "value": value},
        )
        self.row = row
        self.column = column


class InvariantViolationError(DataError):
    """One or more records violate the CurveRecord invariants."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message, {"violations": violations or []})
        self.violations = violations or []


class NetworkError(DataError):
    """Transport failure talking to the LMFDB API (retryable)."""

    pass


class SchemaDriftError(DataError):
    """An expected field is missing from an LMFDB API response."""

    def __init__(self, field: str, table: str):
        super().__init__(f"LMFDB table {table} response lacks field {field!r}", {"field": field})
        self.field = field


class EmptyResultError(DataError):
    """A query returned no records."""

    pass


class EmptyClassError(DataError):
    """A requested class has no members."""

    def __init__(self, class_field: str, value: Any):
        super().__init__(f"No records with {class_field} = {value!r}", {"value": value})
        self.value = value


class DegenerateSplitError(DataError):
    """A train/test split would leave one side empty."""

    pass


class InvalidClassSpecError(DataError):
    """A synthetic class specification contains a non-square or non-positive order."""

    pass


class EmptyStratumError(DataError):
    """A rank stratum has no curves."""

    pass


class MissingApColumnsError(DataError):
    """The dataset does not carry a_p values."""

    pass


# --- features ---


class FeatureError(ShaLabError):
    """Base class for feature engineering errors."""

    pass


class MissingFeatureError(FeatureError):
    """A requested feature is absent on a record."""

    def __init__(self, feature: str, label: str | None = None):
        where = f" on record {label}" if label else ""
        super().__init__(
            f"Missing feature {feature!r}{where}", {"feature": feature, "label": label}
        )
        self.feature = feature
        self.label = label


class NonPositiveFeatureError(FeatureError):
    """A BSD feature is zero or negative."""

    def __init__(self, feature: str, value: float, label: str | None = None):
        super().__init__(
            f"Feature {feature!r} must be positive, got {value!r}",
            {"feature": feature, "value": value, "label": label},
        )
        self.feature = feature


class NonPositiveEntryError(FeatureError):
    """A log-transformed matrix entry is not strictly positive."""

    def __init__(self, row: int, column: str, value: float):
        super().__init__(
            f"Cannot take log of entry {value!r} at row {row}, column {column!r}",
            {"row": row, "column": column, "value": value},
        )
        self.row = row
        self.column = column


class UnknownFeatureError(FeatureError):
    """A feature name is not present in a matrix."""

    def __init__(self, feature: str):
        super().__init__(f"Unknown feature: {feature!r}", {"feature": feature})
        self.feature = feature


# --- numerics ---


class NumericalError(ShaLabError):
    """Base class for linear algebra and training failures."""

    pass


class NonFiniteError(NumericalError):
    """A value diverged or an input contains NaN/inf."""

    def __init__(self, message: str, epoch: int | None = None):
        super().__init__(message, {"epoch": epoch})
        self.epoch = epoch


class RankDeficientError(NumericalError):
    """Least-squares design matrix lacks full column rank."""

    def __init__(self, condition: float):
        super().__init__(
            f"Design matrix is rank deficient (condition estimate {condition:.3e})",
            {"condition": condition},
        )
        self.condition = condition


class NotSymmetricError(NumericalError):
    """Eigensolver input is not symmetric."""

    pass


class NoConvergenceError(NumericalError):
    """Iterative solver exhausted its sweep budget."""

    pass


class DimensionMismatchError(NumericalError):
    """Input shape does not match what a model or scaler was fitted on."""

    pass


class DegenerateTargetError(NumericalError):
    """Training target has a single class."""

    pass


# --- metrics / reporting ---


class MetricError(ShaLabError):
    """Base class for evaluation errors."""

    pass


class LengthMismatchError(MetricError):
    """Prediction and truth vectors differ in length."""

    def __init__(self, left: int, right: int):
        super().__init__(f"Length mismatch: {left} != {right}", {"left": left, "right": right})


class EmptyInputError(MetricError):
    """An evaluation was requested on zero rows."""

    pass


class EmptyDataError(ShaLabError):
    """A plot was requested without finite data."""

    pass
