"""Test fields for the principal-value oracle."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import DomainError
from ..geometry.ball_domain import BallDomain, Point, as_point
from ..kernels.base import finite_difference_gradient
from ..kernels.classical import regular1_H
from ..kernels.fractional import fundamental_F, regular_part_H
from ..numerics.special_functions import FracParams

ValueFn = Callable[[Point], float]
GradFn = Callable[[Point], NDArray[np.float64]]

# (centre, radius) of a sphere across which a field is only Hölder continuous.
Interface = tuple[tuple[float, ...], float]


@dataclass(frozen=True, slots=True)
class SmoothField:
    """A scalar field on R^N for the nonlocal oracle.

    Attributes:
        N: ambient dimension
        value: point -> real
        extent: radius of an origin-centred ball outside which the field either vanishes
            (``compact=True``) or is smooth and decays to zero at infinity
        compact: whether the field vanishes outside ``extent``
        interfaces: spheres across which the field is not C²; the oracle places radial
            breakpoints there and refuses to evaluate on them
        grad: optional analytic gradient
    """

    N: int
    value: ValueFn
    extent: float
    compact: bool = True
    interfaces: tuple[Interface, ...] = ()
    grad: GradFn | None = None

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if not self.extent > 0.0:
            raise DomainError(f"extent must be positive, got {self.extent!r}")

    def __call__(self, z: ArrayLike) -> float:
        return float(self.value(as_point(z, self.N)))

    def gradient(self, z: ArrayLike, step: float = 1e-5) -> NDArray[np.float64]:
        """Analytic gradient when available, otherwise Richardson central differences."""

        point = as_point(z, self.N)
        if self.grad is not None:
            return np.asarray(self.grad(point), dtype=np.float64)
        fd = finite_difference_gradient(self.value, point, step)
        assert fd.grad is not None
        return fd.grad


def bump(center: ArrayLike, radius: float, N: int | None = None) -> SmoothField:
    """C^∞ bump exp(1 − 1/(1 − |t−c|²/ρ²)) supported in B_ρ(c), equal to 1 at c."""

    c = np.atleast_1d(np.asarray(center, dtype=np.float64))
    dim = int(N if N is not None else c.shape[0])
    c = as_point(c, dim)
    if not radius > 0.0:
        raise DomainError(f"bump radius must be positive, got {radius!r}")
    rho2 = radius * radius

    def value(t: Point) -> float:
        diff = t - c
        q = float(diff @ diff) / rho2
        if q >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - q))

    def grad(t: Point) -> NDArray[np.float64]:
        diff = t - c
        q = float(diff @ diff) / rho2
        if q >= 1.0:
            return np.zeros(dim)
        return -value(t) * 2.0 / (rho2 * (1.0 - q) ** 2) * diff

    return SmoothField(dim, value, extent=float(np.linalg.norm(c)) + radius, grad=grad)


def eigen_bump(N: int, s: float) -> SmoothField:
    """(1 − |t|²)_+^s, whose fractional Laplacian is constant inside the unit ball."""

    if not 0.0 < s < 1.0:
        raise DomainError(f"eigen_bump needs 0 < s < 1, got {s!r}")

    def value(t: Point) -> float:
        q = 1.0 - float(t @ t)
        return q**s if q > 0.0 else 0.0

    def grad(t: Point) -> NDArray[np.float64]:
        q = 1.0 - float(t @ t)
        if q <= 0.0:
            return np.zeros(N)
        return -2.0 * s * q ** (s - 1.0) * t

    return SmoothField(
        N,
        value,
        extent=1.0,
        interfaces=((tuple([0.0] * N), 1.0),),
        grad=grad,
    )


def scaled(field: SmoothField, factor: float) -> SmoothField:
    """Return factor·u."""

    grad = field.grad
    return SmoothField(
        field.N,
        lambda t: factor * field.value(t),
        field.extent,
        field.compact,
        field.interfaces,
        (lambda t: factor * grad(t)) if grad is not None else None,
    )


def translated(field: SmoothField, shift: ArrayLike) -> SmoothField:
    """Return t ↦ u(t − shift)."""

    h = as_point(shift, field.N)
    grad = field.grad
    interfaces = tuple(
        (tuple((np.asarray(centre) + h).tolist()), radius) for centre, radius in field.interfaces
    )
    return SmoothField(
        field.N,
        lambda t: field.value(t - h),
        field.extent + float(np.linalg.norm(h)),
        field.compact,
        interfaces,
        (lambda t: grad(t - h)) if grad is not None else None,
    )


def _check_same_dimension(fields: Sequence[SmoothField]) -> int:
    dims = {f.N for f in fields}
    if len(dims) != 1:
        raise DomainError(f"fields live in different dimensions: {sorted(dims)}")
    return dims.pop()


def linear_combination(coefficients: Sequence[float], fields: Sequence[SmoothField]) -> SmoothField:
    """Return Σ α_i u_i."""

    if len(coefficients) != len(fields) or not fields:
        raise DomainError("linear_combination needs matching, non-empty coefficient and field lists")
    N = _check_same_dimension(fields)
    pairs = list(zip((float(a) for a in coefficients), fields))
    grads = [f.grad for f in fields]

    def value(t: Point) -> float:
        return sum(a * f.value(t) for a, f in pairs)

    grad: GradFn | None = None
    if all(g is not None for g in grads):

        def grad(t: Point) -> NDArray[np.float64]:
            return sum((a * f.grad(t) for a, f in pairs), np.zeros(N))  # type: ignore[misc]

    return SmoothField(
        N,
        value,
        max(f.extent for f in fields),
        all(f.compact for f in fields),
        tuple(i for f in fields for i in f.interfaces),
        grad,
    )


def product(u: SmoothField, v: SmoothField) -> SmoothField:
    """Return the pointwise product u·v."""

    N = _check_same_dimension((u, v))
    grad: GradFn | None = None
    if u.grad is not None and v.grad is not None:
        ug, vg = u.grad, v.grad

        def grad(t: Point) -> NDArray[np.float64]:
            return v.value(t) * ug(t) + u.value(t) * vg(t)

    compact = u.compact or v.compact
    if u.compact and v.compact:
        extent = min(u.extent, v.extent)
    elif u.compact:
        extent = u.extent
    elif v.compact:
        extent = v.extent
    else:
        extent = max(u.extent, v.extent)
    return SmoothField(
        N,
        lambda t: u.value(t) * v.value(t),
        extent,
        compact,
        u.interfaces + v.interfaces,
        grad,
    )


def regular_part_field(p: FracParams, d: BallDomain, x: ArrayLike) -> SmoothField:
    """H_s(x, ·) inside B_R extended by F_s(x, ·) outside (the exterior condition of H)."""

    px = d.require_interior(x, "x")
    N = d.N
    R = d.R
    inside = regular1_H if p.is_local else None

    def value(t: Point) -> float:
        if float(np.linalg.norm(t)) < R:
            if inside is not None:
                return inside(d, px, t)
            return regular_part_H(p, d, px, t)
        return fundamental_F(p, px, t)

    return SmoothField(
        N,
        value,
        extent=R,
        compact=False,
        interfaces=((tuple([0.0] * N), R),),
    )
