"""Test suite for frac_pohozaev."""
