"""Tests for the closed-form fractional kernels on the ball."""

from __future__ import annotations

import math

import numpy as np
import pytest

from frac_pohozaev.exceptions import DomainError, RangeError
from frac_pohozaev.geometry import BallDomain
from frac_pohozaev.kernels import (
    COINCIDENCE_THRESHOLD,
    KernelMethod,
    ball_green_G,
    boundary_trace,
    finite_difference_gradient,
    fundamental_F,
    grad_F,
    grad_G,
    grad_H,
    regular_part_eval,
    regular_part_H,
    robin_R,
)
from frac_pohozaev.numerics import FracParams

PAIRS_3D = [
    ([0.2, 0.0, 0.0], [0.0, 0.3, 0.0]),
    ([-0.4, 0.1, 0.0], [0.3, 0.0, 0.2]),
    ([0.7, 0.1, -0.2], [0.05, -0.6, 0.1]),
]


def random_pairs(
    seed: int, count: int, N: int = 3, radius: float = 0.9
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Distinct pairs drawn uniformly from the ball of the given radius."""

    rng = np.random.default_rng(seed)

    def draw() -> np.ndarray:
        direction = rng.standard_normal(N)
        return radius * rng.uniform() ** (1.0 / N) * direction / np.linalg.norm(direction)

    pairs = []
    while len(pairs) < count:
        x, y = draw(), draw()
        if np.linalg.norm(x - y) > 1e-3:
            pairs.append((x, y))
    return pairs


@pytest.fixture(params=[0.1, 0.5, 0.75, 0.9])
def params_3d(request: pytest.FixtureRequest) -> FracParams:
    return FracParams(3, request.param)


class TestFundamentalSolution:
    """F_s and its gradient."""

    def test_half_laplacian_in_three_dimensions(self) -> None:
        """F_{1/2}(x, z) = 1/(2π²|x−z|²) in R^3."""
        p = FracParams(3, 0.5)
        value = fundamental_F(p, [0.0, 0.0, 0.0], [0.0, 0.5, 0.0])
        assert value == pytest.approx(1.0 / (2.0 * math.pi**2 * 0.25), rel=1e-13)

    def test_gradient_matches_finite_differences(self) -> None:
        """grad_F agrees with a Richardson central difference."""
        p = FracParams(2, 0.3)
        x = np.array([0.1, -0.2])
        z = np.array([0.4, 0.3])
        fd = finite_difference_gradient(lambda t: fundamental_F(p, x, t), z, 1e-3)
        assert np.allclose(grad_F(p, x, z), fd.grad, rtol=1e-8)

    def test_coincident_points(self) -> None:
        """F is singular on the diagonal."""
        with pytest.raises(DomainError):
            fundamental_F(FracParams(3, 0.5), [0.1, 0.0, 0.0], [0.1, 0.0, 0.0])


class TestGreenFunction:
    """G_s = F_s − H_s on the ball."""

    @pytest.mark.parametrize(("x", "y"), PAIRS_3D)
    def test_symmetry(self, params_3d: FracParams, x: list[float], y: list[float]) -> None:
        """G and H are symmetric in their arguments."""
        d = BallDomain(3, 1.0)
        assert ball_green_G(params_3d, d, x, y) == pytest.approx(
            ball_green_G(params_3d, d, y, x), rel=1e-13
        )
        assert regular_part_H(params_3d, d, x, y) == pytest.approx(
            regular_part_H(params_3d, d, y, x), rel=1e-13
        )

    @pytest.mark.parametrize(("x", "y"), PAIRS_3D)
    def test_decomposition(self, params_3d: FracParams, x: list[float], y: list[float]) -> None:
        """G + H = F with both parts positive."""
        d = BallDomain(3, 1.0)
        g = ball_green_G(params_3d, d, x, y)
        h = regular_part_H(params_3d, d, x, y)
        assert g > 0.0 and h > 0.0
        assert g + h == pytest.approx(fundamental_F(params_3d, x, y), rel=1e-12)

    def test_scaling_with_radius(self, params_3d: FracParams) -> None:
        """G on B_R at (Rx, Ry) equals R^{2s−N} G on B_1 at (x, y)."""
        R = 2.5
        x, y = np.array(PAIRS_3D[1][0]), np.array(PAIRS_3D[1][1])
        scaled = ball_green_G(params_3d, BallDomain(3, R), R * x, R * y)
        unit = ball_green_G(params_3d, BallDomain(3, 1.0), x, y)
        assert scaled == pytest.approx(R ** (2.0 * params_3d.s - 3.0) * unit, rel=1e-12)

    def test_green_decreases_towards_the_boundary(self) -> None:
        """G_s(0, ·) is radially decreasing."""
        p = FracParams(3, 0.4)
        d = BallDomain(3, 1.0)
        values = [ball_green_G(p, d, [0.0, 0.0, 0.0], [r, 0.0, 0.0]) for r in (0.2, 0.5, 0.9, 0.99)]
        assert values == sorted(values, reverse=True)

    def test_one_dimension(self) -> None:
        """The decomposition holds on the interval as well."""
        p = FracParams(1, 0.25)
        d = BallDomain(1, 1.0)
        g = ball_green_G(p, d, [0.3], [-0.5])
        h = regular_part_H(p, d, [0.3], [-0.5])
        assert g + h == pytest.approx(fundamental_F(p, [0.3], [-0.5]), rel=1e-12)

    def test_rejects_local_order(self) -> None:
        """s = 1 is served by the classical kernels."""
        with pytest.raises(DomainError, match="green1_G"):
            ball_green_G(FracParams(3, 1.0), BallDomain(3, 1.0), [0.1, 0, 0], [0, 0.1, 0])

    def test_rejects_dimension_mismatch(self) -> None:
        """Parameters and ball must share N."""
        with pytest.raises(DomainError, match="does not match"):
            ball_green_G(FracParams(2, 0.5), BallDomain(3, 1.0), [0.1, 0, 0], [0, 0.1, 0])

    def test_rejects_exterior_and_coincident_points(self) -> None:
        """Only distinct interior points have a Green value."""
        p = FracParams(3, 0.5)
        d = BallDomain(3, 1.0)
        with pytest.raises(DomainError):
            ball_green_G(p, d, [1.2, 0.0, 0.0], [0.0, 0.1, 0.0])
        with pytest.raises(DomainError):
            ball_green_G(p, d, [0.1, 0.0, 0.0], [0.1, 0.0, 0.0])


class TestRegularPart:
    """H_s near the diagonal and on the boundary."""

    def test_robin_at_the_centre(self) -> None:
        """R_{1/2}(0) = κ_{3,1/2} = 1/(4π²) in the unit ball of R^3."""
        p = FracParams(3, 0.5)
        assert robin_R(p, BallDomain(3, 1.0), [0.0, 0.0, 0.0]) == pytest.approx(
            1.0 / (4.0 * math.pi**2), rel=1e-13
        )

    def test_diagonal_returns_robin(self, params_3d: FracParams) -> None:
        """H(x, x) is the Robin function, tagged as an analytic limit."""
        d = BallDomain(3, 1.0)
        x = [0.3, -0.2, 0.1]
        result = regular_part_eval(params_3d, d, x, x)
        assert result.method is KernelMethod.ANALYTIC_LIMIT
        assert result.value == pytest.approx(robin_R(params_3d, d, x), rel=1e-14)

    def test_near_diagonal_expansion(self, params_3d: FracParams) -> None:
        """Below the coincidence threshold the expansion is used and agrees with R_s."""
        d = BallDomain(3, 1.0)
        x = np.array([0.3, -0.2, 0.1])
        y = x + np.array([1e-10, 0.0, 0.0])
        result = regular_part_eval(params_3d, d, x, y)
        assert result.method is KernelMethod.ANALYTIC_LIMIT
        assert result.value == pytest.approx(robin_R(params_3d, d, x), rel=1e-9)

    def test_continuity_across_the_threshold(self, params_3d: FracParams) -> None:
        """Closed form just above and expansion just below the threshold agree."""
        d = BallDomain(3, 1.0)
        x = np.array([0.1, 0.4, -0.3])
        e = np.array([0.0, 0.0, 1.0])
        above = regular_part_eval(params_3d, d, x, x + 2.0 * COINCIDENCE_THRESHOLD * e)
        below = regular_part_eval(params_3d, d, x, x + 0.5 * COINCIDENCE_THRESHOLD * e)
        assert above.method is KernelMethod.CLOSED_FORM
        assert below.method is KernelMethod.ANALYTIC_LIMIT
        assert above.value == pytest.approx(below.value, rel=1e-7)

    def test_continuation_to_the_robin_function(self) -> None:
        """|H(x, x+h e) − R(x)| shrinks as h → 0."""
        p = FracParams(3, 0.5)
        d = BallDomain(3, 1.0)
        x = np.array([0.2, 0.1, 0.0])
        e = np.array([0.0, 0.0, 1.0])
        robin = robin_R(p, d, x)
        errors = [abs(regular_part_H(p, d, x, x + h * e) - robin) for h in (0.2, 0.1, 0.05)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] / robin < 0.05

    def test_boundary_value_equals_fundamental(self) -> None:
        """On ∂B the tail integral is complete, so H(x, σ) = F(x, σ)."""
        p = FracParams(3, 0.3)
        d = BallDomain(3, 1.0)
        x = [0.2, 0.1, -0.3]
        sigma = [0.0, 0.0, 1.0]
        assert regular_part_H(p, d, x, sigma) == pytest.approx(
            fundamental_F(p, x, sigma), rel=1e-12
        )

    def test_exterior_point_rejected(self) -> None:
        """H is defined on the closed ball only."""
        with pytest.raises(DomainError, match="closed ball"):
            regular_part_H(FracParams(3, 0.5), BallDomain(3, 1.0), [0.0, 0.0, 0.0], [0.0, 0.0, 1.5])


class TestGradients:
    """Analytic gradients of H_s and G_s."""

    @pytest.mark.parametrize(("x", "y"), PAIRS_3D)
    def test_second_slot(self, params_3d: FracParams, x: list[float], y: list[float]) -> None:
        """∇_y H matches finite differences of H(x, ·)."""
        d = BallDomain(3, 1.0)
        fd = finite_difference_gradient(
            lambda t: regular_part_H(params_3d, d, x, t), np.array(y), 1e-4
        )
        assert np.allclose(grad_H(params_3d, d, x, y, "in_y"), fd.grad, rtol=1e-6, atol=1e-10)
        assert fd.method is KernelMethod.FINITE_DIFFERENCE

    @pytest.mark.parametrize(("x", "y"), PAIRS_3D)
    def test_first_slot(self, params_3d: FracParams, x: list[float], y: list[float]) -> None:
        """∇_x H matches finite differences of H(·, y)."""
        d = BallDomain(3, 1.0)
        fd = finite_difference_gradient(
            lambda t: regular_part_H(params_3d, d, t, y), np.array(x), 1e-4
        )
        assert np.allclose(grad_H(params_3d, d, x, y, "in_x"), fd.grad, rtol=1e-6, atol=1e-10)

    def test_slot_swap(self) -> None:
        """grad_H(x, y, 'in_x') equals grad_H(y, x, 'in_y')."""
        p = FracParams(2, 0.6)
        d = BallDomain(2, 1.0)
        x, y = [0.3, 0.1], [-0.2, 0.4]
        assert np.allclose(grad_H(p, d, x, y, "in_x"), grad_H(p, d, y, x, "in_y"))

    def test_green_gradient(self) -> None:
        """∇_y G matches finite differences of G(x, ·)."""
        p = FracParams(3, 0.75)
        d = BallDomain(3, 1.0)
        x, y = PAIRS_3D[0]
        fd = finite_difference_gradient(lambda t: ball_green_G(p, d, x, t), np.array(y), 1e-4)
        assert np.allclose(grad_G(p, d, x, y), fd.grad, rtol=1e-6)

    def test_unknown_slot(self) -> None:
        """Only 'in_x' and 'in_y' are slots."""
        with pytest.raises(DomainError, match="which"):
            grad_H(FracParams(3, 0.5), BallDomain(3, 1.0), PAIRS_3D[0][0], PAIRS_3D[0][1], "in_z")


class TestBoundaryTrace:
    """The s-normal derivative of G_s."""

    @pytest.mark.parametrize("s", [0.25, 0.5, 0.8])
    def test_limit_of_green_over_distance(self, s: float) -> None:
        """G(x, y)/δ(y)^s tends to the trace as y approaches σ along the normal."""
        p = FracParams(3, s)
        d = BallDomain(3, 1.0)
        x = np.array([0.2, -0.1, 0.3])
        sigma = np.array([0.0, 0.6, 0.8])
        delta = 1e-6
        y = (1.0 - delta) * sigma
        quotient = ball_green_G(p, d, x, y) / delta**s
        assert quotient == pytest.approx(boundary_trace(p, d, x, sigma), rel=1e-4)

    def test_centre_value(self) -> None:
        """At x = 0 the trace is 2^s κ / s for R = 1."""
        p = FracParams(3, 0.5)
        d = BallDomain(3, 1.0)
        expected = math.sqrt(2.0) / (4.0 * math.pi**2) / 0.5
        assert boundary_trace(p, d, [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]) == pytest.approx(
            expected, rel=1e-13
        )

    def test_requires_a_boundary_point(self) -> None:
        """σ must lie on the sphere."""
        with pytest.raises(DomainError, match="not on the sphere"):
            boundary_trace(FracParams(3, 0.5), BallDomain(3, 1.0), [0.0, 0.0, 0.0], [0.5, 0, 0])


class TestRandomPairs:
    """Symmetry and the gradient estimate on sampled pairs."""

    def test_symmetry(self, params_3d: FracParams) -> None:
        """G(x, y) = G(y, x) and H(x, y) = H(y, x) across the ball."""
        d = BallDomain(3, 1.0)
        for x, y in random_pairs(11, 100):
            assert ball_green_G(params_3d, d, x, y) == pytest.approx(
                ball_green_G(params_3d, d, y, x), rel=1e-12
            )
            assert regular_part_H(params_3d, d, x, y) == pytest.approx(
                regular_part_H(params_3d, d, y, x), rel=1e-12
            )

    def test_green_lies_between_zero_and_fundamental(self, params_3d: FracParams) -> None:
        """0 < G < F for every sampled pair."""
        d = BallDomain(3, 1.0)
        for x, y in random_pairs(12, 100):
            assert 0.0 < ball_green_G(params_3d, d, x, y) < fundamental_F(params_3d, x, y)

    def test_gradient_estimate(self, params_3d: FracParams) -> None:
        """|∇_y G(x, y)| <= N G(x, y) / min(|x − y|, δ(y)) at 200 pairs."""
        d = BallDomain(3, 1.0)
        for x, y in random_pairs(13, 200, radius=0.99):
            green = ball_green_G(params_3d, d, x, y)
            scale = min(float(np.linalg.norm(x - y)), 1.0 - float(np.linalg.norm(y)))
            gradient = float(np.linalg.norm(grad_G(params_3d, d, x, y)))
            assert gradient <= 3.0 * green / scale


class TestRobinLimit:
    """R_s(x) against an extrapolated limit of H_s(x, y) as y → x."""

    @staticmethod
    def symmetric_average(p: FracParams, d: BallDomain, x: np.ndarray, h: float) -> float:
        e = np.array([1.0, 2.0, 2.0]) / 3.0
        return 0.5 * (regular_part_H(p, d, x, x + h * e) + regular_part_H(p, d, x, x - h * e))

    @pytest.mark.parametrize(
        "x", [[0.0, 0.0, 0.0], [0.3, -0.2, 0.1], [0.5, 0.4, 0.2], [0.8, 0.0, 0.0]]
    )
    def test_richardson_limit(self, params_3d: FracParams, x: list[float]) -> None:
        """Two Richardson steps on the even average reach 1e-7 for |x| <= 0.8."""
        d = BallDomain(3, 1.0)
        point = np.asarray(x)
        h = 0.02 * (1.0 - float(np.linalg.norm(point)))
        a = [self.symmetric_average(params_3d, d, point, h / 2**k) for k in range(3)]
        first = [(4.0 * a[k + 1] - a[k]) / 3.0 for k in range(2)]
        limit = (16.0 * first[1] - first[0]) / 15.0
        assert limit == pytest.approx(robin_R(params_3d, d, point), rel=1e-7)

    def test_tiny_radius_is_a_range_error(self) -> None:
        """A Robin value beyond the double range raises instead of dividing by zero."""
        with pytest.raises(RangeError, match="robin_R"):
            robin_R(FracParams(3, 0.5), BallDomain(3, 1e-170), [0.0, 0.0, 0.0])
