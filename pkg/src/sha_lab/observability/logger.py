"""Structured logging setup and run-scoped log context."""

import logging
import sys
from typing import Any, Optional

import structlog

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def setup_logging(log_level: str = "INFO") -> None:
    """
    Configure structlog to emit one JSON object per line on stderr.

    Stdout is reserved for command results. Unknown level names fall back to
    INFO with a warning instead of failing the command.

    Args:
        log_level: Standard library level name, case-insensitive
    """
    level_name = log_level.upper()
    unknown = level_name not in _LEVELS
    if unknown:
        level_name = "INFO"

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(sort_keys=True),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level_name),
        force=True,
    )
    if unknown:
        get_logger(__name__).warning("Unknown log level; using INFO", requested=log_level)


def get_logger(name: Optional[str] = None) -> structlog.stdlib.BoundLogger:
    """Named structured logger (module name by convention)."""
    return structlog.get_logger(name)


def bind_run_context(**values: Any) -> None:
    """Attach key-value pairs (experiment, command, run id) to every later log line."""
    structlog.contextvars.bind_contextvars(**values)


def clear_run_context() -> None:
    structlog.contextvars.clear_contextvars()
