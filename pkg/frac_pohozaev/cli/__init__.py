"""Command-line interface for fracpoho."""

from .main import cli, write_report

__all__ = ["cli", "write_report"]
