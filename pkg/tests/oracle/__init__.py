"""Tests for the principal-value oracle."""
