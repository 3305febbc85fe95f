"""Tests for special functions and constants."""
