"""Tests for the fracpoho command line."""
