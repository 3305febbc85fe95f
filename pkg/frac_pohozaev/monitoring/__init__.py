"""Monitoring utilities for frac_pohozaev."""

from .metrics import (
    LAST_REL_RESIDUAL,
    VERIFICATION_DURATION,
    VERIFICATION_ERRORS,
    VERIFICATION_RUNS,
    observe_verification_duration,
    record_verification_error,
    record_verification_run,
    set_last_rel_residual,
)

__all__ = [
    "VERIFICATION_RUNS",
    "VERIFICATION_ERRORS",
    "VERIFICATION_DURATION",
    "LAST_REL_RESIDUAL",
    "record_verification_run",
    "record_verification_error",
    "observe_verification_duration",
    "set_last_rel_residual",
]
