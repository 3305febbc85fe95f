"""Tests for ball geometry and sphere rules."""
