"""Tests for the s = 1 kernels and the mollified potentials."""

from __future__ import annotations

import math

import numpy as np
import pytest

from frac_pohozaev.exceptions import DomainError
from frac_pohozaev.geometry import BallDomain, ball_quadrature, boundary_quadrature
from frac_pohozaev.kernels import (
    finite_difference_gradient,
    fundamental_F,
    grad_G1,
    grad_H1,
    grad_mollified_v,
    green1_G,
    local_params,
    mollified_dirac,
    mollified_fundamental_v,
    normal_derivative_G1,
    regular1_H,
    robin_R1,
)
from frac_pohozaev.numerics import FracParams
from frac_pohozaev.oracle import finite_difference_laplacian

X = np.array([0.1, 0.0, 0.0])
Y = np.array([0.0, 0.2, 0.0])


class TestClassicalGreenFunction:
    """Kelvin-reflection Green function of the Laplacian."""

    def test_decomposition_and_symmetry(self, unit_ball_3d: BallDomain) -> None:
        """G_1 + H_1 = F_1 and both parts are symmetric."""
        g = green1_G(unit_ball_3d, X, Y)
        h = regular1_H(unit_ball_3d, X, Y)
        assert g == pytest.approx(green1_G(unit_ball_3d, Y, X), rel=1e-14)
        assert h == pytest.approx(regular1_H(unit_ball_3d, Y, X), rel=1e-14)
        assert g + h == pytest.approx(fundamental_F(FracParams(3, 1.0), X, Y), rel=1e-13)

    def test_centre_values(self, unit_ball_3d: BallDomain) -> None:
        """H_1(0, y) = 1/(4π) and R_1(0) = 1/(4π) in the unit ball."""
        assert regular1_H(unit_ball_3d, [0.0, 0.0, 0.0], Y) == pytest.approx(1.0 / (4.0 * math.pi))
        assert robin_R1(unit_ball_3d, [0.0, 0.0, 0.0]) == pytest.approx(1.0 / (4.0 * math.pi))

    def test_vanishes_on_the_boundary(self, unit_ball_3d: BallDomain) -> None:
        """H_1(x, σ) = F_1(x, σ) on the sphere."""
        sigma = np.array([0.0, 0.0, 1.0])
        assert regular1_H(unit_ball_3d, X, sigma) == pytest.approx(
            fundamental_F(FracParams(3, 1.0), X, sigma), rel=1e-13
        )

    def test_robin_is_the_diagonal(self) -> None:
        """R_1(x) = H_1(x, x) in R^4 as well."""
        d = BallDomain(4, 2.0)
        x = np.array([0.5, -0.3, 0.2, 0.1])
        assert robin_R1(d, x) == pytest.approx(regular1_H(d, x, x), rel=1e-13)

    @pytest.mark.parametrize("which", ["in_x", "in_y"])
    def test_gradients_match_finite_differences(self, unit_ball_3d: BallDomain, which: str) -> None:
        """Both slots of ∇H_1 agree with central differences."""
        if which == "in_y":
            fd = finite_difference_gradient(lambda t: regular1_H(unit_ball_3d, X, t), Y, 1e-4)
        else:
            fd = finite_difference_gradient(lambda t: regular1_H(unit_ball_3d, t, Y), X, 1e-4)
        assert np.allclose(grad_H1(unit_ball_3d, X, Y, which), fd.grad, rtol=1e-7, atol=1e-12)

    def test_green_gradient(self, unit_ball_3d: BallDomain) -> None:
        """∇_y G_1 agrees with central differences."""
        fd = finite_difference_gradient(lambda t: green1_G(unit_ball_3d, X, t), Y, 1e-4)
        assert np.allclose(grad_G1(unit_ball_3d, X, Y), fd.grad, rtol=1e-7)

    def test_regular_part_is_harmonic(self, unit_ball_3d: BallDomain) -> None:
        """ΔH_1(x, ·) vanishes to finite-difference accuracy."""
        laplacian = finite_difference_laplacian(lambda t: regular1_H(unit_ball_3d, X, t), Y, 1e-3)
        assert abs(laplacian) < 1e-5

    def test_normal_derivative(self, unit_ball_3d: BallDomain) -> None:
        """∂_νG_1(x, σ) is the one-sided difference quotient towards σ."""
        sigma = np.array([0.0, 0.6, 0.8])
        h = 1e-6
        quotient = -green1_G(unit_ball_3d, X, (1.0 - h) * sigma) / h
        assert normal_derivative_G1(unit_ball_3d, X, sigma) == pytest.approx(quotient, rel=1e-4)

    def test_poisson_kernel_integrates_to_minus_one(self, unit_ball_3d: BallDomain) -> None:
        """∫ ∂_νG_1(x, σ) dσ = −1."""
        rule = boundary_quadrature(unit_ball_3d, 16)
        x = np.array([0.3, -0.1, 0.2])
        total = rule.integrate(lambda sigma, nu: normal_derivative_G1(unit_ball_3d, x, sigma))
        assert total == pytest.approx(-1.0, rel=1e-10)

    def test_needs_three_dimensions(self) -> None:
        """The classical kernels need N > 2."""
        with pytest.raises(DomainError, match="N > 2"):
            local_params(BallDomain(2, 1.0))
        with pytest.raises(DomainError):
            green1_G(BallDomain(2, 1.0), [0.1, 0.0], [0.0, 0.1])


class TestMollifiedPotential:
    """δ_{ρ,a} and v_{ρ,a}."""

    def test_dirac_has_unit_mass(self) -> None:
        """∫ δ_{ρ,a} = 1."""
        a = np.array([0.1, 0.2, -0.1])
        rule = ball_quadrature(3, a, 0.05)
        assert rule.integrate(lambda z: mollified_dirac(a, 0.05, z)) == pytest.approx(1.0, rel=1e-12)
        assert mollified_dirac(a, 0.05, a + 0.06) == 0.0

    def test_potential_is_continuous_at_rho(self) -> None:
        """The inner quadratic meets F_1 at |z − a| = ρ."""
        a = np.zeros(3)
        rho = 0.1
        inside = mollified_fundamental_v(a, rho, [rho * (1.0 - 1e-12), 0.0, 0.0])
        outside = mollified_fundamental_v(a, rho, [rho * (1.0 + 1e-12), 0.0, 0.0])
        assert inside == pytest.approx(outside, rel=1e-9)
        assert outside == pytest.approx(fundamental_F(FracParams(3, 1.0), a, [rho, 0.0, 0.0]), rel=1e-9)

    def test_potential_solves_poisson(self) -> None:
        """−Δv_{ρ,a} = δ_{ρ,a} inside B_ρ(a)."""
        a = np.zeros(3)
        rho = 0.2
        z = np.array([0.05, 0.02, 0.0])
        laplacian = finite_difference_laplacian(lambda t: mollified_fundamental_v(a, rho, t), z, 1e-3)
        assert -laplacian == pytest.approx(mollified_dirac(a, rho, z), rel=1e-6)

    @pytest.mark.parametrize("z", [[0.05, 0.02, 0.0], [0.3, -0.1, 0.2]])
    def test_gradient(self, z: list[float]) -> None:
        """grad_mollified_v matches central differences inside and outside B_ρ."""
        a = np.zeros(3)
        fd = finite_difference_gradient(lambda t: mollified_fundamental_v(a, 0.2, t), np.array(z), 1e-5)
        assert np.allclose(grad_mollified_v(a, 0.2, z), fd.grad, rtol=1e-6)

    def test_invalid_arguments(self) -> None:
        """ρ must be positive and N > 2."""
        with pytest.raises(DomainError):
            mollified_dirac([0.0, 0.0, 0.0], 0.0, [0.0, 0.0, 0.0])
        with pytest.raises(DomainError):
            mollified_fundamental_v([0.0, 0.0], 0.1, [0.0, 0.0])
