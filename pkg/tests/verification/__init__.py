"""Tests for identity verification."""
