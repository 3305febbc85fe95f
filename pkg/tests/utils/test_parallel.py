"""Tests for deterministic parallel evaluation."""

from __future__ import annotations

import numpy as np
import pytest

from frac_pohozaev.geometry import BallDomain, boundary_quadrature
from frac_pohozaev.kernels import boundary_trace
from frac_pohozaev.numerics import FracParams
from frac_pohozaev.utils.parallel import pairwise_sum, parallel_map, shutdown_pools


class TestPairwiseSum:
    """Fixed-tree reduction."""

    def test_matches_exact_sum(self) -> None:
        """Integers are summed exactly, including an odd tail."""
        assert pairwise_sum(np.arange(101, dtype=float)) == 5050.0

    def test_empty_and_single(self) -> None:
        """Empty input sums to zero; one value is returned as is."""
        assert pairwise_sum([]) == 0.0
        assert pairwise_sum([2.5]) == 2.5

    def test_reduces_rounding_growth(self) -> None:
        """The tree keeps a long sum of 0.1 within a few ulps."""
        values = np.full(2**16, 0.1)
        assert pairwise_sum(values) == pytest.approx(6553.6, rel=1e-14)


class TestParallelMap:
    """Order-preserving map over the worker pool."""

    def test_preserves_order(self) -> None:
        """Results come back in input order regardless of workers."""
        items = list(range(500))
        assert parallel_map(lambda i: i * i, items, workers=4) == [i * i for i in items]
        shutdown_pools()

    def test_quadrature_is_bitwise_independent_of_workers(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """A boundary integral is bit-identical for 1 and 4 threads."""
        p = FracParams(3, 0.5)
        d = BallDomain(3, 1.0)
        x = np.array([0.3, -0.1, 0.2])
        rule = boundary_quadrature(d, 16)

        def integrand(sigma, nu):
            return boundary_trace(p, d, x, sigma) ** 2 * float((sigma - x) @ nu)

        serial = rule.integrate(integrand, workers=1)
        monkeypatch.setenv("FRACPOHO_THREADS", "4")
        threaded = rule.integrate(integrand)
        assert threaded == serial
