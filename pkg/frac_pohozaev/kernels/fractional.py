"""Closed-form kernels of (−Δ)^s on the ball B_R, 0 < s < 1.

The ball Green function uses the integral representation

    G_s(x, y) = κ |x−y|^{2s−N} ∫_0^{r0} t^{s−1} (1+t)^{−N/2} dt,
    r0 = (R²−|x|²)(R²−|y|²) / (R²|x−y|²).

With u = t/(1+t) the integral becomes the lower incomplete beta B(r0/(1+r0); s, N/2−s),
and the complementary tail (which gives H_s = F_s − G_s) is B(1/(1+r0); N/2−s, s).
Both arguments are formed from the same numerator and denominator, so neither side is
obtained by subtracting nearly equal quantities.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import DomainError, RangeError
from ..geometry.ball_domain import BallDomain, Point, as_point, outward_normal
from ..numerics.special_functions import FracParams, incomplete_beta_lower, make_constants
from .base import (
    KernelEval,
    KernelMethod,
    check_slot,
    closed_ball_point,
    distinct_interior_pair,
)

# Relative to R.
COINCIDENCE_THRESHOLD = 1e-8


def _require_fractional(p: FracParams, operation: str, local_name: str) -> None:
    if p.is_local:
        raise DomainError(f"{operation} needs 0 < s < 1; use {local_name} for s = 1")


def _check_dimension(p: FracParams, d: BallDomain) -> None:
    if p.N != d.N:
        raise DomainError(f"parameter dimension N={p.N} does not match the ball (N={d.N})")


def _r0_split(d: BallDomain, x: Point, y: Point) -> tuple[float, float, float]:
    """Return (u0, 1−u0, |x−y|) with u0 = r0/(1+r0), both halves formed exactly."""

    r2 = d.R * d.R
    # Clamped: boundary points may sit a rounding error outside the sphere.
    numerator = max((r2 - float(x @ x)) * (r2 - float(y @ y)), 0.0)
    diff = x - y
    dist2 = float(diff @ diff)
    denominator = r2 * dist2
    total = numerator + denominator
    return numerator / total, denominator / total, math.sqrt(dist2)


def fundamental_F(p: FracParams, x: ArrayLike, z: ArrayLike) -> float:
    """Return F_s(x, z) = b_{N,s} |x−z|^{2s−N}; at s = 1 this is the Newtonian kernel."""

    px = as_point(x, p.N)
    pz = as_point(z, p.N)
    dist = float(np.linalg.norm(px - pz))
    if dist == 0.0:
        raise DomainError(f"fundamental_F is singular at coincident points {px.tolist()}")
    return make_constants(p).b_fund * dist ** (2.0 * p.s - p.N)


def grad_F(p: FracParams, x: ArrayLike, z: ArrayLike) -> NDArray[np.float64]:
    """Return ∇_z F_s(x, z) = b (2s−N) |z−x|^{2s−N−2} (z−x)."""

    px = as_point(x, p.N)
    pz = as_point(z, p.N)
    diff = pz - px
    dist = float(np.linalg.norm(diff))
    if dist == 0.0:
        raise DomainError(f"grad_F is singular at coincident points {px.tolist()}")
    b = make_constants(p).b_fund
    return b * (2.0 * p.s - p.N) * dist ** (2.0 * p.s - p.N - 2.0) * diff


def ball_green_G(p: FracParams, d: BallDomain, x: ArrayLike, y: ArrayLike) -> float:
    """Return G_s(x, y) on B_R for distinct interior points.

    Raises:
        DomainError: For s = 1, exterior or coincident points.
    """

    _require_fractional(p, "ball_green_G", "green1_G")
    _check_dimension(p, d)
    px, py, _ = distinct_interior_pair(d, x, y)
    u0, complement, dist = _r0_split(d, px, py)
    kappa = make_constants(p).kappa_bgr
    half_n = p.N / 2.0
    return (
        kappa
        * dist ** (2.0 * p.s - p.N)
        * incomplete_beta_lower(u0, p.s, half_n - p.s, complement=complement)
    )


def _near_diagonal(p: FracParams, d: BallDomain, x: Point, y: Point) -> tuple[float, Point]:
    """Two-term expansion of H_s and its y-gradient for |x−y| ≪ δ.

    With P = (R²−|x|²)(R²−|y|²)/R² the tail integral gives
    H ≈ κ [P^{s−N/2}/(N/2−s) − (N/2)/(N/2−s+1) · P^{s−N/2−1} |x−y|²].
    """

    kappa = make_constants(p).kappa_bgr
    r2 = d.R * d.R
    ax = r2 - float(x @ x)
    ay = r2 - float(y @ y)
    prod = ax * ay / r2
    a = p.N / 2.0 - p.s
    diff = y - x
    dist2 = float(diff @ diff)
    correction = (p.N / 2.0) / (a + 1.0)
    value = kappa * (prod**-a / a - correction * prod ** (-a - 1.0) * dist2)
    grad = kappa * prod ** (-a - 1.0) * (2.0 * ax / r2 * y - 2.0 * correction * diff)
    return value, grad


def regular_part_eval(p: FracParams, d: BallDomain, x: ArrayLike, y: ArrayLike) -> KernelEval:
    """Evaluate H_s(x, y) on the closed ball, tagging the method used.

    x = y returns the Robin function; |x−y| < 1e−8·R switches to the near-diagonal
    expansion (``analytic_limit``). On ∂B_R the tail is the full beta integral, so H = F.
    """

    _require_fractional(p, "regular_part_H", "regular1_H")
    _check_dimension(p, d)
    px = closed_ball_point(d, x, "x")
    py = closed_ball_point(d, y, "y")
    dist = float(np.linalg.norm(px - py))
    if dist == 0.0:
        return KernelEval(value=robin_R(p, d, px), method=KernelMethod.ANALYTIC_LIMIT)
    if dist < COINCIDENCE_THRESHOLD * d.R:
        value, _ = _near_diagonal(p, d, px, py)
        return KernelEval(value=value, method=KernelMethod.ANALYTIC_LIMIT)

    u0, complement, dist = _r0_split(d, px, py)
    kappa = make_constants(p).kappa_bgr
    tail = incomplete_beta_lower(complement, p.N / 2.0 - p.s, p.s, complement=u0)
    return KernelEval(value=kappa * dist ** (2.0 * p.s - p.N) * tail)


def regular_part_H(p: FracParams, d: BallDomain, x: ArrayLike, y: ArrayLike) -> float:
    """Return H_s(x, y) = F_s(x, y) − G_s(x, y)."""

    return regular_part_eval(p, d, x, y).value


def robin_R(p: FracParams, d: BallDomain, x: ArrayLike) -> float:
    """Return R_s(x) = H_s(x, x) = 2κ/(N−2s) · ((R²−|x|²)/R)^{2s−N}."""

    _require_fractional(p, "robin_R", "robin_R1")
    _check_dimension(p, d)
    px = d.require_interior(x, "x")
    kappa = make_constants(p).kappa_bgr
    q = px / d.R
    reduced = d.R * (1.0 - float(q @ q))
    try:
        power = reduced ** (2.0 * p.s - p.N)
    except (OverflowError, ZeroDivisionError):
        raise RangeError("robin_R", f"(R²−|x|²)/R = {reduced:.3e}") from None
    return 2.0 * kappa / (p.N - 2.0 * p.s) * power


def boundary_trace(p: FracParams, d: BallDomain, x: ArrayLike, sigma: ArrayLike) -> float:
    """Return lim G_s(x, y)/δ(y)^s as y → σ ∈ ∂B_R.

    Closed form: (2^s κ / s) · ((R²−|x|²)/R)^s / |x−σ|^N.
    """

    _require_fractional(p, "boundary_trace", "normal_derivative_G1")
    _check_dimension(p, d)
    px = d.require_interior(x, "x")
    ps = d.point(sigma)
    outward_normal(d, ps)
    kappa = make_constants(p).kappa_bgr
    reduced = (d.R * d.R - float(px @ px)) / d.R
    dist = float(np.linalg.norm(px - ps))
    return 2.0**p.s * kappa / p.s * reduced**p.s / dist**p.N


def _grad_second_slot(p: FracParams, d: BallDomain, x: Point, y: Point) -> Point:
    """∇_y H_s(x, y) for distinct interior points."""

    dist = float(np.linalg.norm(x - y))
    if dist < COINCIDENCE_THRESHOLD * d.R:
        return _near_diagonal(p, d, x, y)[1]

    u0, complement, dist = _r0_split(d, x, y)
    kappa = make_constants(p).kappa_bgr
    half_n = p.N / 2.0
    tail = incomplete_beta_lower(complement, half_n - p.s, p.s, complement=u0)
    diff = y - x
    dist2 = dist * dist
    ay = d.R * d.R - float(y @ y)
    # r0^s (1+r0)^{-N/2} = u0^s (1-u0)^{N/2-s}
    density = u0**p.s * complement ** (half_n - p.s)
    return (
        kappa
        * dist ** (2.0 * p.s - p.N)
        * (
            (2.0 * p.s - p.N) * tail / dist2 * diff
            + 2.0 * density * (y / ay + diff / dist2)
        )
    )


def grad_H(
    p: FracParams,
    d: BallDomain,
    x: ArrayLike,
    y: ArrayLike,
    which: str = "in_y",
) -> NDArray[np.float64]:
    """Analytic gradient of H_s(x, y).

    ``which="in_y"`` differentiates in the second argument, ``"in_x"`` in the first.
    ∇_x H_s(y, x) (first slot evaluated at (y, x)) therefore equals
    ``grad_H(p, d, y, x, "in_y")`` by symmetry of H.

    Raises:
        DomainError: For s = 1, exterior or coincident points, or an unknown slot.
    """

    slot = check_slot(which)
    _require_fractional(p, "grad_H", "grad_H1")
    _check_dimension(p, d)
    px, py, _ = distinct_interior_pair(d, x, y)
    if slot == "in_x":
        return _grad_second_slot(p, d, py, px)
    return _grad_second_slot(p, d, px, py)


def grad_G(p: FracParams, d: BallDomain, x: ArrayLike, y: ArrayLike) -> NDArray[np.float64]:
    """Return ∇_y G_s(x, y) = ∇_y F_s(x, y) − ∇_y H_s(x, y)."""

    _require_fractional(p, "grad_G", "grad_G1")
    _check_dimension(p, d)
    px, py, _ = distinct_interior_pair(d, x, y)
    return grad_F(p, px, py) - _grad_second_slot(p, d, px, py)
