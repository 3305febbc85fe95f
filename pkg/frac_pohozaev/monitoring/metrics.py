"""Prometheus metrics definitions for frac_pohozaev."""

from __future__ import annotations

from prometheus_client import Counter, Gauge, Histogram

VERIFICATION_RUNS = Counter(
    "verification_runs_total",
    "Total identity verifications by identity and status.",
    labelnames=("identity", "status"),
)

VERIFICATION_ERRORS = Counter(
    "verification_errors_total",
    "Total verification errors grouped by error type.",
    labelnames=("error_type",),
)

VERIFICATION_DURATION = Histogram(
    "verification_duration_seconds",
    "Distribution of identity verification durations in seconds.",
    buckets=(0.01, 0.05, 0.1, 0.25, 0.5, 1, 2, 5, 10, 30, 60),
)

LAST_REL_RESIDUAL = Gauge(
    "verification_last_rel_residual",
    "Relative residual of the most recent run of each identity.",
    labelnames=("identity",),
)


def record_verification_run(identity: str, status: str) -> None:
    """Increment the verification runs counter with the supplied labels."""

    VERIFICATION_RUNS.labels(identity=identity, status=status).inc()


def record_verification_error(error_type: str) -> None:
    """Increment the verification errors counter for the provided error type."""

    VERIFICATION_ERRORS.labels(error_type=error_type).inc()


def observe_verification_duration(duration_seconds: float) -> None:
    """Record the verification duration in seconds."""

    VERIFICATION_DURATION.observe(max(duration_seconds, 0.0))


def set_last_rel_residual(identity: str, residual: float) -> None:
    """Publish the latest relative residual of ``identity``."""

    LAST_REL_RESIDUAL.labels(identity=identity).set(residual)
