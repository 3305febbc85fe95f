"""Mollified form of the classical bilinear identity.

Replacing the Dirac masses at x and y by δ_{ρ,x}, δ_{ρ,y} splits the volume side of the
s = 1 identity into a fundamental part B̃_ρ built from v_{ρ,·} and a regular part Ã_ρ
built from u_{ρ,·} − v_{ρ,·} = −H_1(·, ·). As ρ → 0, B̃_ρ → 0 and Ã_ρ tends to the
right-hand side of the local bilinear identity.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ..exceptions import DomainError
from ..geometry.ball_domain import BallDomain, Point, as_point, ball_quadrature
from ..kernels.classical import grad_H1, local_params, regular1_H
from ..kernels.mollified import grad_mollified_v, mollified_dirac, mollified_fundamental_v
from ..numerics.special_functions import make_constants
from ..schemas.report import IdentityReport, RefinementStep, ReportParams, relative_residual
from ..utils.config import get_verification_configuration
from .refinement import boundary_warnings

DEFAULT_RHOS = (0.05, 0.02, 0.01)


@dataclass(frozen=True, slots=True)
class MollifiedTerms:
    """Volume terms of the mollified identity at one radius ρ."""

    rho: float
    a_tilde: float
    b_tilde: float
    grad_v_term: float
    grad_v_target: float

    @property
    def total(self) -> float:
        return self.a_tilde + self.b_tilde

    @property
    def grad_v_error(self) -> float:
        return abs(self.grad_v_term - self.grad_v_target)


def _check_radius(d: BallDomain, x: Point, y: Point, rho: float) -> None:
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    gap = float(np.linalg.norm(x - y))
    if rho >= 0.5 * gap:
        raise DomainError(f"rho={rho} must be below |x-y|/2={0.5 * gap:.6g}")
    for name, point in (("x", x), ("y", y)):
        if float(np.linalg.norm(point)) + rho >= d.R:
            raise DomainError(f"B_rho({name}) with rho={rho} is not contained in the ball")


def local_rhs(d: BallDomain, x: Point, y: Point, xi: Point) -> float:
    """(N−2)H_1(x,y) + ⟨∇_xH_1(y,x), x−ξ⟩ + ⟨∇_yH_1(x,y), y−ξ⟩."""

    return (
        (d.N - 2.0) * regular1_H(d, x, y)
        + float(grad_H1(d, y, x, "in_y") @ (x - xi))
        + float(grad_H1(d, x, y, "in_y") @ (y - xi))
    )


def mollified_limit_terms(
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    xi: ArrayLike,
    rho: float,
    *,
    radial_order: int = 12,
    angular_order: int = 12,
) -> MollifiedTerms:
    """Evaluate Ã_ρ, B̃_ρ and −∫δ_{ρ,y}⟨z−ξ, ∇v_{ρ,x}⟩ by volume quadrature on B_ρ(x), B_ρ(y)."""

    params = local_params(d)
    px = d.require_interior(x, "x")
    py = d.require_interior(y, "y")
    pxi = as_point(xi, d.N)
    _check_radius(d, px, py, rho)
    N = d.N
    around_x = ball_quadrature(N, px, rho, radial_order=radial_order, angular_order=angular_order)
    around_y = ball_quadrature(N, py, rho, radial_order=radial_order, angular_order=angular_order)

    grad_v_x = -around_y.integrate(
        lambda z: mollified_dirac(py, rho, z) * float((z - pxi) @ grad_mollified_v(px, rho, z))
    )
    grad_v_y = -around_x.integrate(
        lambda z: mollified_dirac(px, rho, z) * float((z - pxi) @ grad_mollified_v(py, rho, z))
    )
    potential = around_y.integrate(
        lambda z: mollified_fundamental_v(px, rho, z) * mollified_dirac(py, rho, z)
    )
    b_tilde = grad_v_x + grad_v_y + (2.0 - N) * potential

    regular_y = around_y.integrate(
        lambda z: mollified_dirac(py, rho, z) * float((z - pxi) @ grad_H1(d, px, z, "in_y"))
    )
    regular_x = around_x.integrate(
        lambda z: mollified_dirac(px, rho, z) * float((z - pxi) @ grad_H1(d, py, z, "in_y"))
    )
    regular_value = around_y.integrate(
        lambda z: regular1_H(d, px, z) * mollified_dirac(py, rho, z)
    )
    a_tilde = regular_y + regular_x + (N - 2.0) * regular_value

    area = make_constants(params).sphere_area
    diff = py - px
    target = float((py - pxi) @ diff) / (area * float(np.linalg.norm(diff)) ** N)
    return MollifiedTerms(
        rho=float(rho),
        a_tilde=a_tilde,
        b_tilde=b_tilde,
        grad_v_term=grad_v_x,
        grad_v_target=target,
    )


def first_order_rate(terms: Sequence[MollifiedTerms], slack: float = 1e-12) -> bool:
    """True when the grad-v error shrinks at least linearly in ρ along ``terms``."""

    if not terms:
        return True
    reference = terms[0]
    bound = reference.grad_v_error / reference.rho
    return all(t.grad_v_error <= bound * t.rho * (1.0 + 1e-9) + slack for t in terms[1:])


def verify_mollified_limit(
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    xi: ArrayLike,
    rhos: Sequence[float] = DEFAULT_RHOS,
) -> IdentityReport:
    """Track |Ã_ρ + B̃_ρ − RHS| over decreasing ρ; history orders are round(1/ρ)."""

    local_params(d)
    px = d.require_interior(x, "x")
    py = d.require_interior(y, "y")
    pxi = as_point(xi, d.N)
    radii = [float(r) for r in rhos]
    if not radii or any(b >= a for a, b in zip(radii, radii[1:])):
        raise DomainError(f"rhos must be non-empty and strictly decreasing, got {radii}")

    orders = [max(1, round(1.0 / rho)) for rho in radii]
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise DomainError(f"rhos {radii} are too close together to give distinct orders {orders}")

    rhs = local_rhs(d, px, py, pxi)
    terms = [mollified_limit_terms(d, px, py, pxi, rho) for rho in radii]
    history = [
        RefinementStep(
            order=order,
            lhs=t.total,
            rhs=rhs,
            residual=relative_residual(t.total, rhs),
        )
        for order, t in zip(orders, terms)
    ]
    warnings = boundary_warnings(
        d,
        {"x": px, "y": py},
        get_verification_configuration().quadrature.boundary_warning_fraction,
    )
    if not first_order_rate(terms):
        warnings.append(
            "the fundamental-part gradient term does not converge at first order in rho: "
            + ", ".join(f"rho={t.rho:g}: {t.grad_v_error:.3e}" for t in terms)
        )
    final = terms[-1]
    return IdentityReport.from_sides(
        "mollified",
        ReportParams(N=d.N, s=1.0, R=d.R, x=px.tolist(), y=py.tolist(), xi=pxi.tolist()),
        final.total,
        rhs,
        quad_order=history[-1].order,
        refinement_history=history,
        warnings=warnings,
    )
