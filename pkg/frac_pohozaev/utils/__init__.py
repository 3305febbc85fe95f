"""Utilities package initialization."""
from .config import (
    GlobalSettings,
    VerificationConfiguration,
    clear_settings_cache,
    get_settings,
    get_verification_configuration,
    load_key_value_config,
    load_run_file,
    load_yaml_config,
    resolve_thread_count,
    validate_config,
)
from .logging import log_verification_attempt, setup_logger
from .parallel import pairwise_sum, parallel_map

__all__ = [
    "GlobalSettings",
    "VerificationConfiguration",
    "clear_settings_cache",
    "get_settings",
    "get_verification_configuration",
    "load_key_value_config",
    "load_run_file",
    "load_yaml_config",
    "resolve_thread_count",
    "validate_config",
    "log_verification_attempt",
    "setup_logger",
    "pairwise_sum",
    "parallel_map",
]
