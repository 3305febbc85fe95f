"""Tests for configuration, logging and parallel helpers."""
