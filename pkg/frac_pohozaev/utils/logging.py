"""Structured logging for identity runs.

Every record carries the fields in :data:`CONTEXT_FIELDS`; records that do not set
them print ``-``. Output goes to stderr so that ``--json`` stdout stays parseable.
"""

from __future__ import annotations

import logging
import sys
from threading import Lock
from typing import Any, Final

from .config import get_settings

PACKAGE_LOGGER: Final[str] = "frac_pohozaev"

CONTEXT_FIELDS: Final[tuple[str, ...]] = ("identity_id", "dim", "order", "status", "duration_ms")

DEFAULT_CONTEXT: Final[dict[str, str]] = dict.fromkeys(CONTEXT_FIELDS, "-")

LOG_FORMAT: Final[str] = (
    "%(asctime)s | %(levelname)s | %(name)s | "
    "identity=%(identity_id)s | N=%(dim)s | order=%(order)s | "
    "status=%(status)s | %(duration_ms)sms | %(message)s"
)

# Only a pass is routine; failures and errors are surfaced.
_STATUS_LEVELS: Final[dict[str, int]] = {"passed": logging.INFO}

_handler_lock: Final = Lock()
_handler: logging.Handler | None = None


def _resolve_level(name: str) -> int:
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.INFO


class ContextualFormatter(logging.Formatter):
    """Formatter that fills structured fields a record does not carry."""

    def __init__(self, fmt: str, defaults: dict[str, str] | None = None) -> None:
        super().__init__(fmt)
        self._defaults = dict(defaults or {})

    def format(self, record: logging.LogRecord) -> str:  # type: ignore[override]
        for key, value in self._defaults.items():
            record.__dict__.setdefault(key, value)
        return super().format(record)


def _install_handler() -> None:
    """Attach the stderr handler to the package logger once per process."""

    global _handler
    with _handler_lock:
        if _handler is not None:
            return
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(ContextualFormatter(LOG_FORMAT, DEFAULT_CONTEXT))
        package = logging.getLogger(PACKAGE_LOGGER)
        package.setLevel(_resolve_level(get_settings().log_level))
        package.addHandler(handler)
        _handler = handler


class StructuredLoggerAdapter(logging.LoggerAdapter):
    """Adapter whose bound context yields to extras passed on a single call."""

    def process(  # type: ignore[override]
        self, msg: str, kwargs: dict[str, Any]
    ) -> tuple[str, dict[str, Any]]:
        kwargs["extra"] = {**(self.extra or {}), **(kwargs.get("extra") or {})}
        return msg, kwargs


def setup_logger(
    name: str,
    *,
    level: str | None = None,
    context: dict[str, Any] | None = None,
) -> logging.LoggerAdapter:
    """Return ``name``'s logger bound to the structured defaults plus ``context``.

    Args:
        name: Logger name, usually ``__name__``.
        level: Optional level for this logger only (tests mostly).
        context: Fields such as ``identity_id`` bound to every record.
    """

    _install_handler()
    logger = logging.getLogger(name)
    logger.setLevel(_resolve_level(level) if level else logging.NOTSET)
    return StructuredLoggerAdapter(logger, {**DEFAULT_CONTEXT, **(context or {})})


def log_verification_attempt(
    logger: logging.Logger | logging.LoggerAdapter,
    identity_id: str,
    dim: int,
    duration_ms: int,
    status: str,
    **extra_context: Any,
) -> None:
    """Log the outcome of one identity run.

    ``order`` becomes a structured field; remaining keywords (residuals, error text)
    are appended to the message as ``key=value`` pairs.
    """

    order = extra_context.pop("order", "-")
    fields = {
        "identity_id": identity_id,
        "dim": dim,
        "order": order,
        "status": status,
        "duration_ms": duration_ms,
    }
    details = "".join(f" | {key}={value}" for key, value in sorted(extra_context.items()))
    status_value = status or "unknown"
    level = _STATUS_LEVELS.get(status_value.lower(), logging.ERROR)
    logger.log(level, f"Verification {status_value}{details}", extra=fields)
