"""Configuration loader and settings helpers for frac_pohozaev."""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
)
from pydantic import (
    ValidationError as PydanticValidationError,
)
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..exceptions import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


def load_yaml_config(config_path: str | Path) -> dict[str, Any]:
    """
    Load configuration from YAML file.

    Args:
        config_path: Path to YAML configuration file

    Returns:
        Configuration dictionary

    Raises:
        ConfigurationError: If file not found or invalid YAML
    """
    try:
        with open(config_path) as f:
            config = yaml.safe_load(f)
            return config if config else {}
    except FileNotFoundError:
        raise ConfigurationError(f"Configuration file not found: {config_path}")
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in {config_path}: {e}")


def load_key_value_config(config_path: str | Path) -> dict[str, str]:
    """
    Load a run configuration written as ``key=value`` lines.

    Blank lines and lines starting with ``#`` are ignored. Keys are normalised to
    lowercase with dashes mapped to underscores so that file keys match CLI flags.

    Raises:
        ConfigurationError: If the file is missing or a line has no ``=``
    """
    try:
        text = Path(config_path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigurationError(f"Configuration file not found: {config_path}")

    config: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(
                f"Invalid line {lineno} in {config_path}: expected key=value, got {raw_line!r}"
            )
        config[key.strip().lower().replace("-", "_")] = value.strip()
    return config


def load_run_file(config_path: str | Path) -> dict[str, Any]:
    """Load a run file, choosing YAML or ``key=value`` parsing from the extension."""

    suffix = Path(config_path).suffix.lower()
    if suffix in {".yaml", ".yml"}:
        return load_yaml_config(config_path)
    return dict(load_key_value_config(config_path))


def validate_config(config: dict[str, Any], model: type[BaseModel]) -> BaseModel:
    """
    Validate configuration against Pydantic model.

    Args:
        config: Configuration dictionary
        model: Pydantic model class for validation

    Returns:
        Validated configuration model instance

    Raises:
        ConfigurationError: If validation fails
    """
    try:
        return model(**config)
    except PydanticValidationError as e:
        raise ConfigurationError(f"Configuration validation failed: {e}")


class QuadratureSettings(BaseModel):
    """Boundary quadrature defaults used by the identity verifier."""

    model_config = ConfigDict(extra="forbid")

    orders: list[int] = Field(default_factory=lambda: [8, 16, 24, 32, 40, 48])
    plateau_factor: float = Field(default=2.0, gt=1.0)
    noise_floor: float = Field(default=1e-14, gt=0)
    absolute_floor: float = Field(default=1e-13, gt=0)
    boundary_warning_fraction: float = Field(default=0.05, gt=0, lt=1)

    @field_validator("orders")
    @classmethod
    def _strictly_increasing(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("orders must not be empty")
        if any(order < 1 for order in value):
            raise ValueError("orders must be positive")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("orders must be strictly increasing")
        return value


class OracleSettings(BaseModel):
    """Default budget of the principal-value oracle."""

    model_config = ConfigDict(extra="forbid")

    inner_fraction: float = Field(default=0.5, gt=0, lt=1)
    jacobi_nodes: int = Field(default=24, ge=2)
    sphere_order: int = Field(default=16, ge=2)
    max_subdivisions: int = Field(default=200, ge=10)
    abs_tolerance: float = Field(default=1e-10, gt=0)
    fd_step: float = Field(default=1e-3, gt=0)


class VerificationConfiguration(BaseModel):
    """Validated runtime configuration merged from base and profile templates."""

    version: int = Field(default=1, ge=1)
    environment: str = "development"
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    tolerances: dict[str, float] = Field(default_factory=dict)

    @field_validator("environment")
    @classmethod
    def _normalize_environment(cls, value: str) -> str:
        return value.lower()

    def tolerance_for(self, identity_id: str, default: float = 1e-7) -> float:
        """Return the residual tolerance configured for ``identity_id``."""

        return float(self.tolerances.get(identity_id, default))


class GlobalSettings(BaseSettings):
    """Global application settings sourced from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="FRACPOHO_",
        env_nested_delimiter="__",
        env_file=(".env", ".env.local"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    environment: str = "development"
    config_profile: str | None = None
    log_level: str = "INFO"
    config_dir: Path = DEFAULT_CONFIG_DIR
    output_dir: Path = Path("reports")
    threads: int = Field(default=1, ge=1)
    record_timings: bool = True

    @field_validator("log_level")
    @classmethod
    def _normalize_log_level(cls, value: str) -> str:
        """Ensure log level values are uppercase for logging config."""

        return value.upper()

    @field_validator("config_dir", "output_dir", mode="before")
    @classmethod
    def _expand_paths(cls, value: Any) -> Any:
        """Allow string paths and expand user markers."""

        if isinstance(value, Path):
            return value
        if isinstance(value, str):
            return Path(value).expanduser()
        return value

    @field_validator("config_profile", mode="before")
    @classmethod
    def _normalize_config_profile(cls, value: Any) -> Any:
        if value is None:
            return value
        if not isinstance(value, str) or not value.strip():
            raise ValueError("config_profile must be a non-empty string if provided")
        return value.strip().lower()


def _deep_merge_dicts(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Deep merge two dictionaries without mutating the inputs."""

    result = dict(base)
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge_dicts(result[key], value)
        else:
            result[key] = value
    return result


@lru_cache(maxsize=8)
def _load_verification_configuration_cached(
    config_dir: str, profile: str
) -> VerificationConfiguration:
    """Load and cache the verification configuration for a given profile."""

    directory = Path(config_dir)
    base_path = directory / "settings.base.yaml"
    if not base_path.exists():
        logger.debug("No base configuration at '%s'; using built-in defaults", base_path)
        base_config: dict[str, Any] = {}
    else:
        base_config = load_yaml_config(base_path)

    profile_path = directory / f"settings.{profile}.yaml"
    profile_config: dict[str, Any] = {}
    if profile_path.exists():
        profile_config = load_yaml_config(profile_path)
    else:
        logger.debug("No configuration override found for profile '%s'", profile)

    merged = _deep_merge_dicts(base_config, profile_config)
    merged["environment"] = profile

    try:
        return VerificationConfiguration.model_validate(merged)
    except PydanticValidationError as exc:
        raise ConfigurationError(
            "Invalid configuration template for profile "
            f"'{profile}': {exc}"
        ) from exc


def get_verification_configuration(
    settings: "GlobalSettings | None" = None,
    *,
    reload: bool = False,
) -> VerificationConfiguration:
    """Return the merged verification configuration for the active profile."""

    if settings is None:
        settings = get_settings()

    profile = settings.config_profile or settings.environment

    if reload:
        _load_verification_configuration_cached.cache_clear()

    return _load_verification_configuration_cached(str(settings.config_dir), profile.lower())


def resolve_thread_count(settings: GlobalSettings | None = None) -> int:
    """Return the worker cap, honouring a raw ``FRACPOHO_THREADS`` override."""

    settings = settings or get_settings()
    raw = os.environ.get("FRACPOHO_THREADS")
    if raw is None:
        return settings.threads
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"FRACPOHO_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"FRACPOHO_THREADS must be >= 1, got {value}")
    return value


@lru_cache(maxsize=1)
def _get_settings_cached() -> GlobalSettings:
    return GlobalSettings()


def get_settings(*, reload: bool = False) -> GlobalSettings:
    """Return cached settings, optionally forcing a reload."""

    if reload:
        _get_settings_cached.cache_clear()
    return _get_settings_cached()


def clear_settings_cache() -> None:
    """Clear cached global settings and merged configuration."""

    _get_settings_cached.cache_clear()
    _load_verification_configuration_cached.cache_clear()


setattr(get_settings, "cache_clear", clear_settings_cache)
