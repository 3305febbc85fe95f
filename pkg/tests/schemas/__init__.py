"""Tests for report and run-config schemas."""
