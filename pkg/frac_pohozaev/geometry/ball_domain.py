"""Geometry of the ball B_R(0) in R^N and quadrature rules on its boundary sphere."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from ..exceptions import DomainError
from ..numerics.special_functions import sphere_area
from ..utils.parallel import pairwise_sum, parallel_map

Point = NDArray[np.float64]

BOUNDARY_TOLERANCE = 1e-10
DETERMINISTIC_DIMENSIONS = (1, 2, 3)


def as_point(coords: ArrayLike, N: int) -> Point:
    """Return ``coords`` as a float vector of length N.

    Raises:
        DomainError: On a dimension mismatch or non-finite entries.
    """

    point = np.atleast_1d(np.asarray(coords, dtype=np.float64))
    if point.ndim != 1 or point.shape[0] != N:
        raise DomainError(f"expected a point in R^{N}, got shape {point.shape}")
    if not np.all(np.isfinite(point)):
        raise DomainError(f"point has non-finite coordinates: {point.tolist()}")
    return point


@dataclass(frozen=True, slots=True)
class BallDomain:
    """The ball of radius R centred at the origin of R^N."""

    N: int
    R: float = 1.0

    def __post_init__(self) -> None:
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be an integer >= 1, got {self.N!r}")
        radius = float(self.R)
        if not math.isfinite(radius) or radius <= 0.0:
            raise DomainError(f"R must be finite and positive, got {self.R!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "R", radius)

    def point(self, coords: ArrayLike) -> Point:
        """Validate ``coords`` as a point of R^N."""

        return as_point(coords, self.N)

    def contains(self, z: ArrayLike) -> bool:
        """True when z lies in the open ball."""

        return bool(np.linalg.norm(self.point(z)) < self.R)

    def require_interior(self, z: ArrayLike, name: str = "point") -> Point:
        """Return ``z`` as a point, raising DomainError unless |z| < R."""

        point = self.point(z)
        if np.linalg.norm(point) >= self.R:
            raise DomainError(
                f"{name} {point.tolist()} must lie inside the ball of radius {self.R}"
            )
        return point

    def surface_measure(self) -> float:
        """Return σ_N R^{N-1}."""

        return sphere_area(self.N) * self.R ** (self.N - 1)


def dist_to_boundary(d: BallDomain, z: ArrayLike) -> float:
    """Signed distance R - |z|: positive inside, zero on the sphere, negative outside."""

    return d.R - float(np.linalg.norm(d.point(z)))


def outward_normal(d: BallDomain, sigma: ArrayLike) -> Point:
    """Return the outward unit normal σ/|σ| at a boundary point.

    Raises:
        DomainError: If ||σ| - R| exceeds the boundary tolerance.
    """

    point = d.point(sigma)
    radius = float(np.linalg.norm(point))
    if abs(radius - d.R) > BOUNDARY_TOLERANCE * max(1.0, d.R):
        raise DomainError(f"{point.tolist()} is not on the sphere of radius {d.R}")
    return point / radius


@dataclass(frozen=True, eq=False)
class SphereRule:
    """Quadrature nodes and positive weights on the sphere of radius ``radius``.

    Weights carry surface-measure units R^{N-1}. ``sampled`` marks Monte-Carlo rules,
    whose ``exactness_degree`` is 0.
    """

    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    exactness_degree: int
    radius: float
    sampled: bool = False
    normals: NDArray[np.float64] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "normals", self.nodes / self.radius)

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    def integrate(
        self,
        func: Callable[[Point, Point], float],
        *,
        workers: int | None = None,
    ) -> float:
        """Integrate ``func(node, normal)`` over the sphere.

        Node evaluations go through the shared worker pool; the weighted values are
        reduced with :func:`pairwise_sum` over the node index.
        """

        values = parallel_map(
            lambda index: func(self.nodes[index], self.normals[index]),
            range(self.size),
            workers=workers,
        )
        return self.integrate_values(np.asarray(values, dtype=np.float64))

    def integrate_values(self, values: ArrayLike) -> float:
        """Return Σ w_q f_q for precomputed node values."""

        return pairwise_sum(self.weights * np.asarray(values, dtype=np.float64))


@lru_cache(maxsize=64)
def _legendre(order: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    nodes, weights = special.roots_legendre(order)
    return np.asarray(nodes), np.asarray(weights)


def _circle_rule(order: int, radius: float) -> SphereRule:
    angles = 2.0 * np.pi * np.arange(order) / order
    nodes = radius * np.column_stack((np.cos(angles), np.sin(angles)))
    weights = np.full(order, 2.0 * np.pi * radius / order)
    return SphereRule(nodes, weights, exactness_degree=order - 1, radius=radius)


def _product_rule(order: int, radius: float) -> SphereRule:
    # Gauss-Legendre in cos(polar angle) times a 2*order-point trapezoid in azimuth.
    polar, polar_weights = _legendre(order)
    azimuth_count = 2 * order
    azimuth = 2.0 * np.pi * (np.arange(azimuth_count) + 0.5) / azimuth_count
    sin_polar = np.sqrt(1.0 - polar**2)
    t, phi = np.meshgrid(polar, azimuth, indexing="ij")
    st, _ = np.meshgrid(sin_polar, azimuth, indexing="ij")
    nodes = radius * np.column_stack(
        (
            (st * np.cos(phi)).ravel(),
            (st * np.sin(phi)).ravel(),
            t.ravel(),
        )
    )
    weights = np.repeat(polar_weights, azimuth_count) * (
        2.0 * np.pi / azimuth_count * radius**2
    )
    return SphereRule(nodes, weights, exactness_degree=2 * order - 1, radius=radius)


def _sampled_rule(N: int, order: int, radius: float, seed: int) -> SphereRule:
    count = 4 * order * order
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((count, N))
    nodes = radius * draws / np.linalg.norm(draws, axis=1, keepdims=True)
    weights = np.full(count, sphere_area(N) * radius ** (N - 1) / count)
    return SphereRule(nodes, weights, exactness_degree=0, radius=radius, sampled=True)


def boundary_quadrature(
    d: BallDomain,
    order: int,
    *,
    sampled: bool = False,
    seed: int = 0,
) -> SphereRule:
    """Return a quadrature rule on ∂B_R.

    N=1 uses the two-point counting rule {-R, R}; N=2 the ``order``-node periodic
    trapezoid rule; N=3 the Gauss-Legendre × trapezoid product rule with
    exactness 2·order-1. Any N ≥ 2 may request the sampled (Monte-Carlo) variant,
    which is the only option for N ≥ 4.

    Raises:
        DomainError: If order < 1 or the dimension has no deterministic rule.
    """

    if isinstance(order, bool) or int(order) != order or order < 1:
        raise DomainError(f"quadrature order must be an integer >= 1, got {order!r}")
    order = int(order)
    if d.N == 1:
        return SphereRule(
            np.array([[-d.R], [d.R]]),
            np.array([1.0, 1.0]),
            exactness_degree=order,
            radius=d.R,
        )
    if sampled:
        return _sampled_rule(d.N, order, d.R, seed)
    if d.N == 2:
        return _circle_rule(order, d.R)
    if d.N == 3:
        return _product_rule(order, d.R)
    raise DomainError(
        f"no deterministic sphere rule for N={d.N}; supported dimensions are "
        f"{DETERMINISTIC_DIMENSIONS} (pass sampled=True for a Monte-Carlo rule)"
    )


@dataclass(frozen=True, eq=False)
class BallRule:
    """Volume quadrature on a ball B_ρ(a): Gauss-Legendre in r times a sphere rule."""

    points: NDArray[np.float64]
    weights: NDArray[np.float64]

    def integrate(self, func: Callable[[Point], float], *, workers: int | None = None) -> float:
        values = parallel_map(
            lambda index: func(self.points[index]), range(self.weights.shape[0]), workers=workers
        )
        return pairwise_sum(self.weights * np.asarray(values, dtype=np.float64))

    def integrate_vector(self, func: Callable[[Point], ArrayLike]) -> NDArray[np.float64]:
        """Integrate a vector-valued integrand component by component."""

        values = np.array([np.asarray(func(point), dtype=np.float64) for point in self.points])
        return np.array(
            [pairwise_sum(self.weights * values[:, k]) for k in range(values.shape[1])]
        )


def ball_quadrature(
    N: int,
    center: ArrayLike,
    radius: float,
    *,
    radial_order: int = 12,
    angular_order: int = 12,
) -> BallRule:
    """Return a volume rule on the ball of ``radius`` around ``center`` in R^N."""

    if radius <= 0.0:
        raise DomainError(f"ball radius must be positive, got {radius!r}")
    centre = as_point(center, N)
    unit = boundary_quadrature(BallDomain(N, 1.0), angular_order)
    r_nodes, r_weights = _legendre(int(radial_order))
    r = 0.5 * radius * (r_nodes + 1.0)
    r_w = 0.5 * radius * r_weights * r ** (N - 1)
    points = centre + (r[:, None, None] * unit.nodes[None, :, :]).reshape(-1, N)
    weights = (r_w[:, None] * unit.weights[None, :]).ravel()
    return BallRule(points, weights)
