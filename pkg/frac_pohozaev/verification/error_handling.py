"""Structured error reports for failed verification runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..exceptions import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    FracPohozaevError,
    HypothesisError,
    IdentityNotFoundError,
    QuadratureBudgetError,
    RangeError,
)

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_INVALID_CONFIG = 2
EXIT_NUMERICAL_FAILURE = 3


@dataclass(slots=True)
class VerificationErrorReport:
    """Machine-readable description of a run that produced no report."""

    identity_id: str
    error_type: str
    message: str
    classification: str
    exit_code: int
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Return a serializable dictionary representation of the error report."""

        payload: dict[str, Any] = {
            "identity_id": self.identity_id,
            "error_type": self.error_type,
            "message": self.message,
            "classification": self.classification,
            "exit_code": self.exit_code,
        }
        if self.details:
            payload["details"] = self.details
        return payload


def build_error_report(
    exc: Exception,
    *,
    identity_id: str,
    extra_details: dict[str, Any] | None = None,
) -> VerificationErrorReport:
    """Construct a :class:`VerificationErrorReport` describing the supplied exception."""

    classification, exit_code = _classify_exception(exc)
    details: dict[str, Any] = {"exception_module": exc.__class__.__module__}
    if isinstance(exc, HypothesisError):
        details["hypothesis"] = exc.hypothesis
    if isinstance(exc, QuadratureBudgetError):
        details["estimate"] = exc.estimate
        details["tolerance"] = exc.tolerance
    if isinstance(exc, ConvergenceError):
        details["routine"] = exc.routine
        details["iterations"] = exc.iterations
    if isinstance(exc, RangeError):
        details["quantity"] = exc.quantity
    if extra_details:
        details.update(extra_details)

    message = str(exc) if str(exc) else exc.__class__.__name__

    return VerificationErrorReport(
        identity_id=identity_id,
        error_type=exc.__class__.__name__,
        message=message,
        classification=classification,
        exit_code=exit_code,
        details=details,
    )


def _classify_exception(exc: Exception) -> tuple[str, int]:
    """Return a tuple of (classification, exit code) for a given exception."""

    if isinstance(exc, HypothesisError):
        return "invalid_config", EXIT_INVALID_CONFIG
    if isinstance(exc, IdentityNotFoundError | ConfigurationError | DomainError):
        return "invalid_config", EXIT_INVALID_CONFIG
    if isinstance(exc, ConvergenceError | QuadratureBudgetError | RangeError):
        return "numerical_failure", EXIT_NUMERICAL_FAILURE
    if isinstance(exc, FracPohozaevError):
        return "numerical_failure", EXIT_NUMERICAL_FAILURE
    return "unexpected", EXIT_NUMERICAL_FAILURE
