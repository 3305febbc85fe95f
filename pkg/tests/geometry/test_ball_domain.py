"""Tests for the ball domain, sphere rules and ball volume rules."""

from __future__ import annotations

import math

import numpy as np
import pytest

from frac_pohozaev.exceptions import DomainError
from frac_pohozaev.geometry import (
    BallDomain,
    as_point,
    ball_quadrature,
    boundary_quadrature,
    dist_to_boundary,
    outward_normal,
)


class TestBallDomain:
    """Construction and point predicates."""

    def test_contains_and_distance(self) -> None:
        """Interior points have positive distance to the sphere."""
        d = BallDomain(3, 2.0)
        assert d.contains([1.0, 0.0, 0.0])
        assert not d.contains([2.0, 0.0, 0.0])
        assert dist_to_boundary(d, [1.0, 1.0, 0.0]) == pytest.approx(2.0 - math.sqrt(2.0))
        assert dist_to_boundary(d, [0.0, 0.0, 3.0]) == pytest.approx(-1.0)

    @pytest.mark.parametrize(("N", "R"), [(0, 1.0), (3, 0.0), (3, -1.0), (2, float("inf"))])
    def test_invalid_domain(self, N: int, R: float) -> None:
        """N >= 1 and a positive finite radius are required."""
        with pytest.raises(DomainError):
            BallDomain(N, R)

    def test_require_interior_rejects_boundary(self, unit_ball_3d: BallDomain) -> None:
        """Points on the sphere are not interior."""
        with pytest.raises(DomainError, match="must lie inside"):
            unit_ball_3d.require_interior([0.0, 1.0, 0.0], "x")

    def test_dimension_mismatch(self) -> None:
        """Points must have N coordinates."""
        with pytest.raises(DomainError):
            as_point([0.1, 0.2], 3)

    def test_non_finite_point(self) -> None:
        """NaN coordinates are rejected."""
        with pytest.raises(DomainError):
            as_point([0.1, float("nan")], 2)

    def test_outward_normal(self, unit_ball_3d: BallDomain) -> None:
        """The normal is σ/|σ| and off-sphere points are refused."""
        sigma = np.array([0.6, 0.0, 0.8])
        assert np.allclose(outward_normal(unit_ball_3d, sigma), sigma)
        with pytest.raises(DomainError, match="not on the sphere"):
            outward_normal(unit_ball_3d, [0.5, 0.0, 0.0])


class TestBoundaryQuadrature:
    """Deterministic and sampled sphere rules."""

    @pytest.mark.parametrize(("N", "R"), [(1, 1.0), (2, 1.5), (3, 0.5)])
    def test_constant_integrates_to_surface_measure(self, N: int, R: float) -> None:
        """Σ w_q equals σ_N R^{N−1}."""
        d = BallDomain(N, R)
        rule = boundary_quadrature(d, 6)
        assert rule.integrate(lambda sigma, nu: 1.0) == pytest.approx(d.surface_measure(), rel=1e-13)

    def test_circle_second_moment(self) -> None:
        """∫_{S^1} x² = π."""
        rule = boundary_quadrature(BallDomain(2, 1.0), 8)
        assert rule.integrate(lambda sigma, nu: sigma[0] ** 2) == pytest.approx(math.pi, rel=1e-13)

    def test_sphere_moments(self) -> None:
        """∫_{S^2} z² = 4π/3 and ∫ x²y²z² = 4π/105."""
        rule = boundary_quadrature(BallDomain(3, 1.0), 6)
        assert rule.exactness_degree == 11
        assert rule.integrate(lambda sigma, nu: sigma[2] ** 2) == pytest.approx(
            4.0 * math.pi / 3.0, rel=1e-13
        )
        assert rule.integrate(lambda sigma, nu: float(np.prod(sigma**2))) == pytest.approx(
            4.0 * math.pi / 105.0, rel=1e-12
        )

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_rotation_invariance_in_three_dimensions(self, seed: int) -> None:
        """A degree-6 polynomial integrates to the same value after a random rotation."""
        rule = boundary_quadrature(BallDomain(3, 1.0), 8)
        rng = np.random.default_rng(seed)
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))

        def poly(sigma: np.ndarray) -> float:
            x, y, z = sigma
            return float(x**4 * y**2 + z**3 - 2.0 * x * z + 1.0)

        plain = rule.integrate(lambda sigma, nu: poly(sigma))
        rotated = rule.integrate(lambda sigma, nu: poly(q @ sigma))
        assert rotated == pytest.approx(plain, rel=1e-13)

    def test_rotation_invariance_on_the_circle(self) -> None:
        """Rotating a degree-6 trigonometric polynomial leaves the circle integral unchanged."""
        rule = boundary_quadrature(BallDomain(2, 1.0), 12)
        angle = 0.7
        q = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])

        def poly(sigma: np.ndarray) -> float:
            return float(sigma[0] ** 4 * sigma[1] ** 2 + sigma[0] * sigma[1] + 1.0)

        plain = rule.integrate(lambda sigma, nu: poly(sigma))
        rotated = rule.integrate(lambda sigma, nu: poly(q @ sigma))
        assert rotated == pytest.approx(plain, rel=1e-13)
        assert plain == pytest.approx(math.pi / 8.0 + 2.0 * math.pi, rel=1e-13)

    def test_line_rule_is_two_points(self) -> None:
        """N = 1 uses the counting measure on {−R, R}."""
        rule = boundary_quadrature(BallDomain(1, 2.0), 5)
        assert rule.size == 2
        assert rule.nodes[:, 0].tolist() == [-2.0, 2.0]
        assert rule.normals[:, 0].tolist() == [-1.0, 1.0]

    def test_normals_are_unit(self) -> None:
        """Normals are nodes divided by the radius."""
        rule = boundary_quadrature(BallDomain(3, 2.0), 4)
        assert np.allclose(np.linalg.norm(rule.normals, axis=1), 1.0)

    def test_sampled_rule(self) -> None:
        """Sampled rules are reproducible per seed and have exactness 0."""
        d = BallDomain(4, 1.0)
        first = boundary_quadrature(d, 3, sampled=True, seed=7)
        second = boundary_quadrature(d, 3, sampled=True, seed=7)
        other = boundary_quadrature(d, 3, sampled=True, seed=8)
        assert first.sampled and first.exactness_degree == 0
        assert np.array_equal(first.nodes, second.nodes)
        assert not np.array_equal(first.nodes, other.nodes)
        assert first.integrate(lambda sigma, nu: 1.0) == pytest.approx(d.surface_measure())

    def test_high_dimension_needs_sampling(self) -> None:
        """No deterministic rule exists for N >= 4."""
        with pytest.raises(DomainError, match="sampled=True"):
            boundary_quadrature(BallDomain(4, 1.0), 3)

    @pytest.mark.parametrize("order", [0, -2, 2.5])
    def test_invalid_order(self, order: float) -> None:
        """Orders are positive integers."""
        with pytest.raises(DomainError):
            boundary_quadrature(BallDomain(3, 1.0), order)  # type: ignore[arg-type]


class TestBallQuadrature:
    """Volume rules on small balls."""

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_volume(self, N: int) -> None:
        """∫_{B_ρ} 1 = σ_N ρ^N / N."""
        rho = 0.3
        rule = ball_quadrature(N, np.full(N, 0.1), rho)
        expected = BallDomain(N, 1.0).surface_measure() * rho**N / N
        assert rule.integrate(lambda z: 1.0) == pytest.approx(expected, rel=1e-13)

    def test_centroid(self) -> None:
        """The first moment about the origin is the centre times the volume."""
        centre = np.array([0.2, -0.1, 0.05])
        rule = ball_quadrature(3, centre, 0.25)
        volume = rule.integrate(lambda z: 1.0)
        moment = rule.integrate_vector(lambda z: z)
        assert np.allclose(moment, centre * volume, rtol=1e-12)

    def test_radius_must_be_positive(self) -> None:
        """A zero radius has no rule."""
        with pytest.raises(DomainError):
            ball_quadrature(3, [0.0, 0.0, 0.0], 0.0)
