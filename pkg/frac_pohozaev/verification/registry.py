"""Identity registry and the runner that turns a RunConfig into a checked report."""

from __future__ import annotations

import logging
import time
from collections.abc import Callable

from ..exceptions import ConfigurationError, FracPohozaevError, IdentityNotFoundError
from ..geometry.ball_domain import BallDomain
from ..monitoring.metrics import (
    observe_verification_duration,
    record_verification_error,
    record_verification_run,
    set_last_rel_residual,
)
from ..numerics.special_functions import FracParams
from ..schemas.report import IdentityReport
from ..schemas.run_config import RunConfig
from ..utils.config import get_verification_configuration
from ..utils.logging import log_verification_attempt, setup_logger
from .identities import (
    verify_bilinear,
    verify_bilinear_general,
    verify_difference_remark,
    verify_local_bilinear,
    verify_local_robin_identity,
    verify_local_vector_identity,
    verify_robin_identity,
)
from .mollified import DEFAULT_RHOS, verify_mollified_limit

IdentityRunner = Callable[[RunConfig], IdentityReport]

# Identity registry - register new identities here
_IDENTITY_REGISTRY: dict[str, IdentityRunner] = {}


def register_identity(name: str, runner: IdentityRunner) -> None:
    """
    Register a new identity runner.

    Args:
        name: Unique identifier for the identity
        runner: Callable turning a RunConfig into an IdentityReport
    """
    _IDENTITY_REGISTRY[name] = runner


def get_identity(name: str) -> IdentityRunner:
    """
    Get an identity runner by name.

    Raises:
        IdentityNotFoundError: If the identity is not registered
    """
    if name not in _IDENTITY_REGISTRY:
        available = sorted(_IDENTITY_REGISTRY.keys())
        available_display = ", ".join(available) if available else "none"
        raise IdentityNotFoundError(
            f"Identity '{name}' is not registered. Available identities: {available_display}."
        )
    return _IDENTITY_REGISTRY[name]


def list_identities() -> list[str]:
    """Return list of registered identity names."""
    return list(_IDENTITY_REGISTRY.keys())


def _require(config: RunConfig, *names: str) -> None:
    missing = [name for name in names if getattr(config, name) is None]
    if missing:
        raise ConfigurationError(
            f"Identity '{config.identity_id}' needs {', '.join(missing)} to be set"
        )


def _fractional(config: RunConfig) -> tuple[FracParams, BallDomain]:
    return FracParams(config.N, config.s), BallDomain(config.N, config.R)


def _ball(config: RunConfig) -> BallDomain:
    return BallDomain(config.N, config.R)


def _run_robin(config: RunConfig) -> IdentityReport:
    p, d = _fractional(config)
    return verify_robin_identity(
        p, d, config.x, config.orders, sampled=config.sampled, seed=config.seed
    )


def _run_bilinear(config: RunConfig) -> IdentityReport:
    _require(config, "y")
    p, d = _fractional(config)
    return verify_bilinear(
        p, d, config.x, config.y, config.orders, sampled=config.sampled, seed=config.seed
    )


def _run_bilinear_general(config: RunConfig) -> IdentityReport:
    _require(config, "y", "xi")
    p, d = _fractional(config)
    return verify_bilinear_general(
        p,
        d,
        config.x,
        config.y,
        config.xi,
        config.orders,
        sampled=config.sampled,
        seed=config.seed,
    )


def _run_difference(config: RunConfig) -> IdentityReport:
    _require(config, "y")
    p, d = _fractional(config)
    return verify_difference_remark(
        p, d, config.x, config.y, config.orders, sampled=config.sampled, seed=config.seed
    )


def _run_local(config: RunConfig) -> IdentityReport:
    _require(config, "y", "xi")
    return verify_local_bilinear(
        _ball(config),
        config.x,
        config.y,
        config.xi,
        config.orders,
        sampled=config.sampled,
        seed=config.seed,
    )


def _run_local_vector(config: RunConfig) -> IdentityReport:
    _require(config, "y", "axis")
    assert config.axis is not None
    return verify_local_vector_identity(
        _ball(config),
        config.x,
        config.y,
        config.axis,
        config.orders,
        sampled=config.sampled,
        seed=config.seed,
    )


def _run_local_robin(config: RunConfig) -> IdentityReport:
    return verify_local_robin_identity(
        _ball(config), config.x, config.orders, sampled=config.sampled, seed=config.seed
    )


def _run_mollified(config: RunConfig) -> IdentityReport:
    _require(config, "y", "xi")
    return verify_mollified_limit(
        _ball(config), config.x, config.y, config.xi, config.rhos or DEFAULT_RHOS
    )


def run_identity(
    config: RunConfig,
    *,
    logger: logging.Logger | logging.LoggerAdapter | None = None,
) -> IdentityReport:
    """Run one identity and mark the report against its tolerance.

    The tolerance is ``config.tolerance`` when given, otherwise the configured value for
    the identity id. Library errors propagate after being counted and logged.
    """

    logger = logger or setup_logger(__name__, context={"identity_id": config.identity_id})
    runner = get_identity(config.identity_id)
    settings = get_verification_configuration()
    started = time.perf_counter()
    try:
        report = runner(config)
    except FracPohozaevError as exc:
        duration = time.perf_counter() - started
        record_verification_error(exc.__class__.__name__)
        record_verification_run(config.identity_id, "error")
        log_verification_attempt(
            logger,
            config.identity_id,
            config.N,
            int(duration * 1000),
            "error",
            error=str(exc),
        )
        raise

    tolerance = config.tolerance or settings.tolerance_for(config.identity_id)
    report = report.evaluate(tolerance, settings.quadrature.absolute_floor)
    duration = time.perf_counter() - started
    status = "passed" if report.passed else "failed"
    record_verification_run(config.identity_id, status)
    observe_verification_duration(duration)
    set_last_rel_residual(config.identity_id, report.rel_residual)
    log_verification_attempt(
        logger,
        config.identity_id,
        config.N,
        int(duration * 1000),
        status,
        order=report.quad_order,
        rel_residual=report.rel_residual,
        tolerance=tolerance,
    )
    return report


register_identity("robin", _run_robin)
register_identity("bilinear", _run_bilinear)
register_identity("bilinear-general", _run_bilinear_general)
register_identity("difference", _run_difference)
register_identity("local", _run_local)
register_identity("local-vector", _run_local_vector)
register_identity("local-robin", _run_local_robin)
register_identity("mollified", _run_mollified)
