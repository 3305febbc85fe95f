"""Pytest configuration - no path manipulation, rely on proper package installation."""

from __future__ import annotations

from collections.abc import Iterator

import pytest

from frac_pohozaev.utils.config import clear_settings_cache
from frac_pohozaev.utils.parallel import shutdown_pools


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Start every test from the default profile with serial evaluation."""

    for name in (
        "FRACPOHO_ENVIRONMENT",
        "FRACPOHO_CONFIG_PROFILE",
        "FRACPOHO_CONFIG_DIR",
        "FRACPOHO_THREADS",
        "FRACPOHO_RECORD_TIMINGS",
        "FRACPOHO_OUTPUT_DIR",
        "FRACPOHO_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    clear_settings_cache()
    yield
    shutdown_pools()
    clear_settings_cache()


@pytest.fixture
def unit_ball_3d():
    """The unit ball of R^3."""

    from frac_pohozaev.geometry import BallDomain

    return BallDomain(3, 1.0)
