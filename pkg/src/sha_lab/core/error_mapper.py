"""Error mapper for converting exceptions to CLI exit codes.

Each known exception family maps to a fixed (exit_code, message prefix) pair.
The exception's own message is appended only for toolkit errors, whose text
is written for users; anything else gets a generic message.
"""

from .exceptions import (
    ConfigError,
    DataError,
    FeatureError,
    MetricError,
    NumericalError,
    ShaLabError,
    UsageError,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# (exception type, exit code, message prefix); first match wins
_MAPPING: list[tuple[type[Exception], int, str]] = [
    (UsageError, EXIT_USAGE, "usage error"),
    (ConfigError, EXIT_USAGE, "configuration error"),
    (DataError, EXIT_FAILURE, "data error"),
    (FeatureError, EXIT_FAILURE, "feature error"),
    (NumericalError, EXIT_FAILURE, "numerical error"),
    (MetricError, EXIT_FAILURE, "evaluation error"),
    (ShaLabError, EXIT_FAILURE, "error"),
]


class ErrorMapper:
    """Maps internal exceptions to the command-line exit-code contract."""

    @staticmethod
    def to_exit_code(exc: BaseException) -> tuple[int, str]:
        """Convert an exception to an (exit_code, message) tuple.

        Returns a generic message for unmapped exception types.
        """
        for exc_type, code, prefix in _MAPPING:
            if isinstance(exc, exc_type):
                text = exc.message if isinstance(exc, ShaLabError) else str(exc)
                return code, f"{prefix}: {text}"
        return EXIT_FAILURE, "unexpected internal error; rerun with SHA_LAB_LOG_LEVEL=DEBUG"
