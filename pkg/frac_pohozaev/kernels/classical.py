"""Green function of the Laplacian (s = 1) on B_R, N > 2, via Kelvin reflection.

H_1(x, y) = c (|x||y − x*|/R)^{2−N} with x* = R²x/|x|² and c = 1/((N−2)σ_N). The
product |x||y − x*|/R equals q = (|x|²|y|²/R² − 2x·y + R²)^{1/2}, which is symmetric
in x and y and stays valid at x = 0 (q = R), so no separate radial branch is needed.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import DomainError
from ..geometry.ball_domain import BallDomain, Point, outward_normal
from ..numerics.special_functions import FracParams, make_constants
from .base import check_slot, closed_ball_point, distinct_interior_pair


def local_params(d: BallDomain) -> FracParams:
    """Return the s = 1 parameters for the ball's dimension (N > 2 required)."""

    if d.N <= 2:
        raise DomainError(f"the classical kernels need N > 2, got N={d.N}")
    return FracParams(d.N, 1.0)


def _newton_constant(d: BallDomain) -> float:
    return make_constants(local_params(d)).b_fund


def _reflected_distance(d: BallDomain, x: Point, y: Point) -> float:
    r2 = d.R * d.R
    q2 = float(x @ x) * float(y @ y) / r2 - 2.0 * float(x @ y) + r2
    return math.sqrt(q2)


def green1_G(d: BallDomain, x: ArrayLike, y: ArrayLike) -> float:
    """Return G_1(x, y) = c [|x−y|^{2−N} − q^{2−N}]."""

    c = _newton_constant(d)
    px, py, dist = distinct_interior_pair(d, x, y)
    q = _reflected_distance(d, px, py)
    return c * (dist ** (2 - d.N) - q ** (2 - d.N))


def regular1_H(d: BallDomain, x: ArrayLike, y: ArrayLike) -> float:
    """Return H_1(x, y) on the closed ball; x = y gives the Robin function."""

    c = _newton_constant(d)
    px = closed_ball_point(d, x, "x")
    py = closed_ball_point(d, y, "y")
    q = _reflected_distance(d, px, py)
    if q == 0.0:
        raise DomainError(f"H_1 is singular at the boundary diagonal {px.tolist()}")
    return c * q ** (2 - d.N)


def robin_R1(d: BallDomain, x: ArrayLike) -> float:
    """Return R_1(x) = H_1(x, x) = ((R²−|x|²)/R)^{2−N}/((N−2)σ_N)."""

    c = _newton_constant(d)
    px = d.require_interior(x, "x")
    return c * ((d.R * d.R - float(px @ px)) / d.R) ** (2 - d.N)


def _grad_h1_second_slot(d: BallDomain, x: Point, y: Point) -> Point:
    c = _newton_constant(d)
    q = _reflected_distance(d, x, y)
    return c * (2 - d.N) * q ** (-d.N) * (float(x @ x) / (d.R * d.R) * y - x)


def grad_H1(
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    which: str = "in_y",
) -> NDArray[np.float64]:
    """Gradient of H_1(x, y) in the first (``in_x``) or second (``in_y``) argument."""

    slot = check_slot(which)
    px = d.require_interior(x, "x")
    py = d.require_interior(y, "y")
    if slot == "in_x":
        return _grad_h1_second_slot(d, py, px)
    return _grad_h1_second_slot(d, px, py)


def grad_G1(d: BallDomain, x: ArrayLike, y: ArrayLike) -> NDArray[np.float64]:
    """Return ∇_y G_1(x, y)."""

    c = _newton_constant(d)
    px, py, dist = distinct_interior_pair(d, x, y)
    grad_f = c * (2 - d.N) * dist ** (-d.N) * (py - px)
    return grad_f - _grad_h1_second_slot(d, px, py)


def normal_derivative_G1(d: BallDomain, x: ArrayLike, sigma: ArrayLike) -> float:
    """Return ∂_ν G_1(x, σ) = −(R²−|x|²)/(σ_N R |x−σ|^N), the negative Poisson kernel."""

    params = local_params(d)
    px = d.require_interior(x, "x")
    ps = d.point(sigma)
    outward_normal(d, ps)
    area = make_constants(params).sphere_area
    dist = float(np.linalg.norm(px - ps))
    return -(d.R * d.R - float(px @ px)) / (area * d.R * dist**d.N)
