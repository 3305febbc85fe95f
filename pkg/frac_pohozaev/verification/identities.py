"""Pohozaev-type identities for the Green function of the ball.

Every verifier evaluates both sides of one identity and returns an
:class:`~frac_pohozaev.schemas.report.IdentityReport`. Boundary integrals use the sphere
rules of :mod:`frac_pohozaev.geometry`; the fractional boundary integrands involve the
trace G_s(x, ·)/δ^s, the classical ones the normal derivative of G_1.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..exceptions import DomainError, HypothesisError
from ..geometry.ball_domain import BallDomain, Point, as_point, boundary_quadrature
from ..kernels.classical import (
    grad_H1,
    local_params,
    normal_derivative_G1,
    regular1_H,
    robin_R1,
)
from ..kernels.fractional import boundary_trace, grad_H, regular_part_H, robin_R
from ..numerics.special_functions import FracParams, gamma_fn
from ..schemas.report import IdentityReport, ReportParams
from ..utils.config import get_verification_configuration
from .refinement import boundary_warnings, refine, resolve_orders

Order = int | Sequence[int] | None
BoundaryIntegrand = Callable[[Point, Point], float]


def _fractional(p: FracParams, d: BallDomain, identity_id: str, local_id: str) -> None:
    if p.is_local:
        raise DomainError(f"identity '{identity_id}' needs 0 < s < 1; use '{local_id}' for s = 1")
    if p.N != d.N:
        raise DomainError(f"parameter dimension N={p.N} does not match the ball (N={d.N})")


def _require_general_centre(p: FracParams, identity_id: str) -> None:
    if not p.s > 0.5:
        raise HypothesisError(
            identity_id,
            "s > 1/2",
            f"got s={p.s}; the identity with an arbitrary centre ξ is only established "
            "for s > 1/2 (use 'bilinear', which takes ξ = x, for s <= 1/2)",
        )


def _distinct(d: BallDomain, x: ArrayLike, y: ArrayLike) -> tuple[Point, Point]:
    px = d.require_interior(x, "x")
    py = d.require_interior(y, "y")
    if np.array_equal(px, py):
        raise DomainError(f"x and y must be distinct, both are {px.tolist()}")
    return px, py


def _params(
    p_or_d: FracParams | BallDomain,
    d: BallDomain,
    x: Point,
    y: Point | None = None,
    xi: Point | None = None,
    axis: int | None = None,
) -> ReportParams:
    s = p_or_d.s if isinstance(p_or_d, FracParams) else 1.0
    return ReportParams(
        N=d.N,
        s=s,
        R=d.R,
        x=x.tolist(),
        y=None if y is None else y.tolist(),
        xi=None if xi is None else xi.tolist(),
        axis=axis,
    )


def _boundary_integral(
    d: BallDomain,
    integrand: BoundaryIntegrand,
    *,
    sampled: bool,
    seed: int,
) -> Callable[[int], float]:
    def integrate(order: int) -> float:
        return boundary_quadrature(d, order, sampled=sampled, seed=seed).integrate(integrand)

    return integrate


def _report(
    identity_id: str,
    d: BallDomain,
    params: ReportParams,
    points: dict[str, Point],
    order: Order,
    evaluate: Callable[[int], tuple[float, float]],
) -> IdentityReport:
    config = get_verification_configuration()
    quadrature = config.quadrature
    ladder = resolve_orders(order, quadrature.orders)
    result = refine(
        evaluate,
        ladder,
        plateau_factor=quadrature.plateau_factor,
        noise_floor=quadrature.noise_floor,
    )
    return IdentityReport.from_sides(
        identity_id,
        params,
        result.lhs,
        result.rhs,
        quad_order=result.order,
        refinement_history=result.history,
        wall_time=result.wall_time,
        warnings=boundary_warnings(d, points, quadrature.boundary_warning_fraction),
    )


def verify_robin_identity(
    p: FracParams,
    d: BallDomain,
    x: ArrayLike,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """R_s(x) = Γ(1+s)²/(N−2s) ∫_{∂B} (G_s(x,·)/δ^s)² ⟨σ−x, ν⟩ dσ."""

    _fractional(p, d, "robin", "local-robin")
    px = d.require_interior(x, "x")
    lhs = robin_R(p, d, px)
    factor = gamma_fn(1.0 + p.s) ** 2 / (p.N - 2.0 * p.s)

    def integrand(sigma: Point, nu: Point) -> float:
        trace = boundary_trace(p, d, px, sigma)
        return trace * trace * float((sigma - px) @ nu)

    integral = _boundary_integral(d, integrand, sampled=sampled, seed=seed)
    return _report(
        "robin",
        d,
        _params(p, d, px),
        {"x": px},
        order,
        lambda q: (lhs, factor * integral(q)),
    )


def _trace_product(p: FracParams, d: BallDomain, x: Point, y: Point) -> Callable[[Point], float]:
    def product(sigma: Point) -> float:
        return boundary_trace(p, d, x, sigma) * boundary_trace(p, d, y, sigma)

    return product


def verify_bilinear(
    p: FracParams,
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """Γ(1+s)² ∫ (G_s(x,·)/δ^s)(G_s(y,·)/δ^s) ⟨σ−x, ν⟩ = (N−2s)H_s(x,y) + ⟨∇_y H_s(x,y), y−x⟩."""

    _fractional(p, d, "bilinear", "local")
    px, py = _distinct(d, x, y)
    factor = gamma_fn(1.0 + p.s) ** 2
    traces = _trace_product(p, d, px, py)
    rhs = (p.N - 2.0 * p.s) * regular_part_H(p, d, px, py) + float(
        grad_H(p, d, px, py, "in_y") @ (py - px)
    )
    integral = _boundary_integral(
        d,
        lambda sigma, nu: traces(sigma) * float((sigma - px) @ nu),
        sampled=sampled,
        seed=seed,
    )
    return _report(
        "bilinear",
        d,
        _params(p, d, px, py),
        {"x": px, "y": py},
        order,
        lambda q: (factor * integral(q), rhs),
    )


def verify_bilinear_general(
    p: FracParams,
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    xi: ArrayLike,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """The bilinear identity with the weight ⟨σ−ξ, ν⟩ for any ξ ∈ R^N (s > 1/2 only).

    Raises:
        HypothesisError: If s <= 1/2.
    """

    _fractional(p, d, "bilinear-general", "local")
    _require_general_centre(p, "bilinear-general")
    px, py = _distinct(d, x, y)
    pxi = as_point(xi, d.N)
    factor = gamma_fn(1.0 + p.s) ** 2
    traces = _trace_product(p, d, px, py)
    # ∇_x H_s(y, x) is the second-slot gradient of H_s(y, ·) at x.
    grad_x = grad_H(p, d, py, px, "in_y")
    grad_y = grad_H(p, d, px, py, "in_y")
    rhs = (
        (p.N - 2.0 * p.s) * regular_part_H(p, d, px, py)
        + float(grad_x @ (px - pxi))
        + float(grad_y @ (py - pxi))
    )
    integral = _boundary_integral(
        d,
        lambda sigma, nu: traces(sigma) * float((sigma - pxi) @ nu),
        sampled=sampled,
        seed=seed,
    )
    return _report(
        "bilinear-general",
        d,
        _params(p, d, px, py, pxi),
        {"x": px, "y": py},
        order,
        lambda q: (factor * integral(q), rhs),
    )


def verify_difference_remark(
    p: FracParams,
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """Γ(1+s)² ∫ traces ⟨x−y, ν⟩ = ⟨∇_x H_s(y,x) + ∇_y H_s(x,y), x−y⟩ (s > 1/2 only)."""

    _fractional(p, d, "difference", "local")
    _require_general_centre(p, "difference")
    px, py = _distinct(d, x, y)
    factor = gamma_fn(1.0 + p.s) ** 2
    traces = _trace_product(p, d, px, py)
    shift = px - py
    rhs = float((grad_H(p, d, py, px, "in_y") + grad_H(p, d, px, py, "in_y")) @ shift)
    integral = _boundary_integral(
        d,
        lambda sigma, nu: traces(sigma) * float(shift @ nu),
        sampled=sampled,
        seed=seed,
    )
    return _report(
        "difference",
        d,
        _params(p, d, px, py),
        {"x": px, "y": py},
        order,
        lambda q: (factor * integral(q), rhs),
    )


def _normal_product(d: BallDomain, x: Point, y: Point) -> Callable[[Point], float]:
    def product(sigma: Point) -> float:
        return normal_derivative_G1(d, x, sigma) * normal_derivative_G1(d, y, sigma)

    return product


def verify_local_bilinear(
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    xi: ArrayLike,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """∫ ∂_νG_1(x,·) ∂_νG_1(y,·) ⟨σ−ξ, ν⟩ = (N−2)H_1(x,y) + ⟨∇_xH_1(y,x), x−ξ⟩ + ⟨∇_yH_1(x,y), y−ξ⟩."""

    local_params(d)
    px, py = _distinct(d, x, y)
    pxi = as_point(xi, d.N)
    normals = _normal_product(d, px, py)
    rhs = (
        (d.N - 2.0) * regular1_H(d, px, py)
        + float(grad_H1(d, py, px, "in_y") @ (px - pxi))
        + float(grad_H1(d, px, py, "in_y") @ (py - pxi))
    )
    integral = _boundary_integral(
        d,
        lambda sigma, nu: normals(sigma) * float((sigma - pxi) @ nu),
        sampled=sampled,
        seed=seed,
    )
    return _report(
        "local",
        d,
        _params(d, d, px, py, pxi),
        {"x": px, "y": py},
        order,
        lambda q: (integral(q), rhs),
    )


def verify_local_vector_identity(
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    i: int,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """∫ ∂_νG_1(x,·) ∂_νG_1(y,·) ν_i = ∂_{x_i}H_1(y,x) + ∂_{y_i}H_1(x,y)."""

    local_params(d)
    if isinstance(i, bool) or int(i) != i or not 0 <= i < d.N:
        raise DomainError(f"axis must be an integer in [0, {d.N}), got {i!r}")
    axis = int(i)
    px, py = _distinct(d, x, y)
    normals = _normal_product(d, px, py)
    rhs = float(grad_H1(d, py, px, "in_y")[axis] + grad_H1(d, px, py, "in_y")[axis])
    integral = _boundary_integral(
        d,
        lambda sigma, nu: normals(sigma) * float(nu[axis]),
        sampled=sampled,
        seed=seed,
    )
    return _report(
        "local-vector",
        d,
        _params(d, d, px, py, axis=axis),
        {"x": px, "y": py},
        order,
        lambda q: (integral(q), rhs),
    )


def verify_local_robin_identity(
    d: BallDomain,
    x: ArrayLike,
    order: Order = None,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> IdentityReport:
    """R_1(x) = 1/(N−2) ∫ (∂_νG_1(x,·))² ⟨σ−x, ν⟩ dσ."""

    local_params(d)
    px = d.require_interior(x, "x")
    lhs = robin_R1(d, px)

    def integrand(sigma: Point, nu: Point) -> float:
        normal = normal_derivative_G1(d, px, sigma)
        return normal * normal * float((sigma - px) @ nu)

    integral = _boundary_integral(d, integrand, sampled=sampled, seed=seed)
    return _report(
        "local-robin",
        d,
        _params(d, d, px),
        {"x": px},
        order,
        lambda q: (lhs, integral(q) / (d.N - 2.0)),
    )
