"""Pointwise evaluation of (−Δ)^s u(z) and of the bilinear form I_s[u, v](z).

The integral over R^N is written in polar coordinates about z and split in three:

* inner ball r < r_in: the numerator is averaged over antipodal directions, which removes
  the gradient term, and the remaining O(r²) ratio is integrated by Gauss–Jacobi with
  weight r^{1−2s};
* annulus r_in < r < ρ_out: adaptive QUADPACK integration per direction, with
  breakpoints where the ray crosses a non-smooth interface of the field;
* far field r > ρ_out: the constant limit of the numerator is integrated exactly and, for
  non-compact fields, the decaying remainder is mapped onto (0, 1] with t = ρ_out/r.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, special

from ..exceptions import DomainError, QuadratureBudgetError
from ..geometry.ball_domain import BallDomain, Point, SphereRule, as_point, boundary_quadrature
from ..kernels.classical import regular1_H
from ..numerics.special_functions import FracParams, OperatorParams, normalization_constant
from ..utils.config import OracleSettings
from ..utils.logging import setup_logger
from ..utils.parallel import pairwise_sum, parallel_map
from .fields import SmoothField, product, regular_part_field

logger = setup_logger(__name__)

Numerator = Callable[[Point], float]

_ORACLE_DIMENSIONS = (1, 2, 3)
_INTERFACE_GAP = 1e-12
MIN_BOUNDARY_MARGIN = 1e-3


class OracleBudget(BaseModel):
    """Resolution of one oracle evaluation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    inner_fraction: float = Field(default=0.5, gt=0, lt=1)
    jacobi_nodes: int = Field(default=24, ge=2)
    sphere_order: int = Field(default=16, ge=2)
    max_subdivisions: int = Field(default=200, ge=10)
    abs_tolerance: float = Field(default=1e-10, gt=0)

    @classmethod
    def from_settings(cls, settings: OracleSettings) -> OracleBudget:
        return cls(
            inner_fraction=settings.inner_fraction,
            jacobi_nodes=settings.jacobi_nodes,
            sphere_order=settings.sphere_order,
            max_subdivisions=settings.max_subdivisions,
            abs_tolerance=settings.abs_tolerance,
        )

    def doubled(self) -> OracleBudget:
        """Return a budget with twice the nodes and subdivisions and half the tolerance."""

        return self.model_copy(
            update={
                "jacobi_nodes": 2 * self.jacobi_nodes,
                "sphere_order": 2 * self.sphere_order,
                "max_subdivisions": 2 * self.max_subdivisions,
                "abs_tolerance": self.abs_tolerance / 2.0,
            }
        )


@lru_cache(maxsize=64)
def _jacobi(count: int, beta: float) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    nodes, weights = special.roots_jacobi(count, 0.0, beta)
    return np.asarray(nodes), np.asarray(weights)


def _directions(N: int, budget: OracleBudget) -> SphereRule:
    if N not in _ORACLE_DIMENSIONS:
        raise DomainError(f"the oracle supports N in {_ORACLE_DIMENSIONS}, got N={N}")
    order = budget.sphere_order + (budget.sphere_order % 2 if N == 2 else 0)
    return boundary_quadrature(BallDomain(N, 1.0), order)


def _radii(field: SmoothField, z: Point, budget: OracleBudget) -> tuple[float, float]:
    """Return (r_in, ρ_out) for an evaluation at z."""

    gaps = [
        abs(float(np.linalg.norm(z - np.asarray(centre))) - radius)
        for centre, radius in field.interfaces
    ]
    scale = min(gaps) if gaps else field.extent
    if scale <= _INTERFACE_GAP * field.extent:
        raise DomainError(
            f"z={z.tolist()} lies on a non-smooth interface of the field; "
            "the pointwise operator is undefined there"
        )
    return budget.inner_fraction * scale, field.extent + float(np.linalg.norm(z))


def _crossings(field: SmoothField, z: Point, theta: Point, lo: float, hi: float) -> list[float]:
    points: list[float] = []
    for centre, radius in field.interfaces:
        w = z - np.asarray(centre)
        b = float(theta @ w)
        disc = b * b - (float(w @ w) - radius * radius)
        if disc <= 0.0:
            continue
        root = math.sqrt(disc)
        points.extend(r for r in (-b - root, -b + root) if lo < r < hi)
    return sorted(points)


def _quad(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    points: list[float],
    budget: OracleBudget,
    what: str,
) -> float:
    value, abserr, *_ = integrate.quad(
        func,
        lo,
        hi,
        points=points or None,
        epsabs=budget.abs_tolerance,
        epsrel=1e-12,
        limit=budget.max_subdivisions,
        full_output=1,
    )
    allowed = 10.0 * max(budget.abs_tolerance, 1e-12 * abs(value))
    if not math.isfinite(value) or abserr > allowed:
        raise QuadratureBudgetError(what, float(abserr), allowed)
    return float(value)


def _singular_integral(
    numerator: Numerator,
    at_infinity: float,
    field: SmoothField,
    z: Point,
    s: float,
    budget: OracleBudget,
    workers: int | None,
) -> float:
    """∫_{R^N} numerator(t) |z−t|^{−N−2s} dt for a numerator vanishing to second order at z."""

    rule = _directions(field.N, budget)
    r_in, rho_out = _radii(field, z, budget)
    xi, wj = _jacobi(budget.jacobi_nodes, 1.0 - 2.0 * s)
    radii = 0.5 * r_in * (xi + 1.0)
    jacobi_scale = (0.5 * r_in) ** (2.0 - 2.0 * s)

    def inner(theta: Point) -> float:
        values = np.array(
            [
                0.5 * (numerator(z + r * theta) + numerator(z - r * theta)) / (r * r)
                for r in radii
            ]
        )
        return jacobi_scale * pairwise_sum(wj * values)

    inner_part = rule.integrate_values(
        parallel_map(lambda q: inner(rule.normals[q]), range(rule.size), workers=workers)
    )

    # QUADPACK callbacks are not re-entrant across threads.
    def annulus(theta: Point) -> float:
        return _quad(
            lambda r: numerator(z + r * theta) * r ** (-1.0 - 2.0 * s),
            r_in,
            rho_out,
            _crossings(field, z, theta, r_in, rho_out),
            budget,
            "annulus integral",
        )

    annulus_part = rule.integrate_values([annulus(theta) for theta in rule.normals])

    far_part = at_infinity * rule.integrate_values(np.ones(rule.size)) * rho_out ** (-2.0 * s) / (
        2.0 * s
    )
    if not field.compact:

        def mapped_tail(theta: Point) -> float:
            def integrand(t: float) -> float:
                return (numerator(z + (rho_out / t) * theta) - at_infinity) * t ** (2.0 * s - 1.0)

            return _quad(integrand, 0.0, 1.0, [], budget, "far-field tail")

        tail = rule.integrate_values([mapped_tail(theta) for theta in rule.normals])
        far_part += rho_out ** (-2.0 * s) * tail

    logger.debug(
        "Singular integral at z=%s: inner=%.6e annulus=%.6e far=%.6e (r_in=%.3g, rho_out=%.3g)",
        z.tolist(),
        inner_part,
        annulus_part,
        far_part,
        r_in,
        rho_out,
    )
    return pairwise_sum([inner_part, annulus_part, far_part])


def _fractional_params(p: OperatorParams, field: SmoothField) -> None:
    if p.is_local:
        raise DomainError("the principal-value oracle needs 0 < s < 1")
    if p.N != field.N:
        raise DomainError(f"field dimension {field.N} does not match N={p.N}")


def frac_laplacian_pv(
    u: SmoothField,
    z: ArrayLike,
    p: OperatorParams,
    budget: OracleBudget | None = None,
    *,
    workers: int | None = None,
) -> float:
    """Return (−Δ)^s u(z) = c_{N,s} p.v.∫ (u(z) − u(t))/|z−t|^{N+2s} dt.

    Raises:
        DomainError: If z lies on a non-smooth interface of ``u`` or N > 3.
        QuadratureBudgetError: If an adaptive piece misses its tolerance.
    """

    _fractional_params(p, u)
    budget = budget or OracleBudget()
    point = as_point(z, p.N)
    uz = u.value(point)
    integral = _singular_integral(
        lambda t: uz - u.value(t), uz, u, point, p.s, budget, workers
    )
    return normalization_constant(p.N, p.s) * integral


def bilinear_I_s(
    u: SmoothField,
    v: SmoothField,
    z: ArrayLike,
    p: OperatorParams,
    budget: OracleBudget | None = None,
    *,
    workers: int | None = None,
) -> float:
    """Return I_s[u, v](z) = c_{N,s} ∫ (u(z)−u(t))(v(z)−v(t))/|z−t|^{N+2s} dt."""

    _fractional_params(p, u)
    _fractional_params(p, v)
    budget = budget or OracleBudget()
    point = as_point(z, p.N)
    uz = u.value(point)
    vz = v.value(point)
    meta = SmoothField(
        p.N,
        u.value,
        max(u.extent, v.extent),
        u.compact and v.compact,
        u.interfaces + v.interfaces,
    )
    integral = _singular_integral(
        lambda t: (uz - u.value(t)) * (vz - v.value(t)),
        uz * vz,
        meta,
        point,
        p.s,
        budget,
        workers,
    )
    return normalization_constant(p.N, p.s) * integral


def product_rule_residual(
    u: SmoothField,
    v: SmoothField,
    z: ArrayLike,
    p: OperatorParams,
    budget: OracleBudget | None = None,
) -> float:
    """Return |(−Δ)^s(uv) − v(−Δ)^s u − u(−Δ)^s v + I_s[u, v]| at z."""

    point = as_point(z, p.N)
    uv = product(u, v)
    lhs = frac_laplacian_pv(uv, point, p, budget)
    terms = (
        v.value(point) * frac_laplacian_pv(u, point, p, budget)
        + u.value(point) * frac_laplacian_pv(v, point, p, budget)
        - bilinear_I_s(u, v, point, p, budget)
    )
    return abs(lhs - terms)


def finite_difference_laplacian(f: Callable[[Point], float], z: ArrayLike, h: float) -> float:
    """Second-order (2N+1)-point approximation of Δf(z)."""

    point = np.atleast_1d(np.asarray(z, dtype=np.float64))
    if not h > 0.0:
        raise DomainError(f"finite-difference step must be positive, got {h!r}")
    centre = f(point)
    total = 0.0
    for k in range(point.shape[0]):
        e = np.zeros_like(point)
        e[k] = h
        total += f(point + e) - 2.0 * centre + f(point - e)
    return total / (h * h)


def s_harmonicity_residual(
    p: FracParams,
    d: BallDomain,
    x: ArrayLike,
    z: ArrayLike,
    budget: OracleBudget | None = None,
    *,
    fd_step: float = 1e-3,
) -> float:
    """Return |(−Δ)^s H_s(x, ·)(z)|, with H_s(x, ·) extended by F_s(x, ·) outside the ball.

    For s = 1 the classical Laplacian of H_1(x, ·) is taken by finite differences.

    Raises:
        DomainError: If z is within ``MIN_BOUNDARY_MARGIN``·R of the sphere.
    """

    if p.N != d.N:
        raise DomainError(f"parameter dimension N={p.N} does not match the ball (N={d.N})")
    px = d.require_interior(x, "x")
    pz = d.require_interior(z, "z")
    margin = d.R - float(np.linalg.norm(pz))
    if margin < MIN_BOUNDARY_MARGIN * d.R:
        raise DomainError(
            f"z={pz.tolist()} is within {margin:.3g} of the boundary; "
            f"the oracle needs a margin of at least {MIN_BOUNDARY_MARGIN}·R"
        )
    if p.is_local:
        if fd_step >= margin:
            raise DomainError(f"finite-difference step {fd_step} too large at z={pz.tolist()}")
        return abs(finite_difference_laplacian(lambda t: regular1_H(d, px, t), pz, fd_step))
    field = regular_part_field(p, d, px)
    return abs(frac_laplacian_pv(field, pz, p, budget))
