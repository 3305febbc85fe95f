"""Tests for the Green-function kernels."""
