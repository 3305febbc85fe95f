"""Mollified Dirac mass and the matching regularised Newtonian potential (N > 2).

v_{ρ,a} is the radial solution of −Δv = δ_{ρ,a} that coincides with F_1(a, ·) outside
B_ρ(a); δ_{ρ,a} = (N/σ_N) ρ^{−N} on B_ρ(a) and 0 elsewhere.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..exceptions import DomainError
from ..geometry.ball_domain import Point
from ..numerics.special_functions import sphere_area


def _prepare(a: ArrayLike, rho: float, z: ArrayLike) -> tuple[Point, Point, int]:
    pa = np.atleast_1d(np.asarray(a, dtype=np.float64))
    pz = np.atleast_1d(np.asarray(z, dtype=np.float64))
    if pa.shape != pz.shape or pa.ndim != 1:
        raise DomainError(f"a and z must be points of the same dimension, got {pa.shape}, {pz.shape}")
    N = pa.shape[0]
    if N <= 2:
        raise DomainError(f"mollified kernels need N > 2, got N={N}")
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    return pa, pz, N


def mollified_dirac(a: ArrayLike, rho: float, z: ArrayLike) -> float:
    """Return δ_{ρ,a}(z)."""

    pa, pz, N = _prepare(a, rho, z)
    if float(np.linalg.norm(pz - pa)) < rho:
        return N / (sphere_area(N) * rho**N)
    return 0.0


def mollified_fundamental_v(a: ArrayLike, rho: float, z: ArrayLike) -> float:
    """Return v_{ρ,a}(z): quadratic inside B_ρ(a), F_1(a, z) outside."""

    pa, pz, N = _prepare(a, rho, z)
    area = sphere_area(N)
    r = float(np.linalg.norm(pz - pa))
    if r < rho:
        return -(r * r) / (2.0 * area * rho**N) + N / (2.0 * (N - 2) * area * rho ** (N - 2))
    return 1.0 / ((N - 2) * area * r ** (N - 2))


def grad_mollified_v(a: ArrayLike, rho: float, z: ArrayLike) -> NDArray[np.float64]:
    """Return ∇_z v_{ρ,a}(z) = −(z−a)/(σ_N max(|z−a|, ρ)^N)."""

    pa, pz, N = _prepare(a, rho, z)
    diff = pz - pa
    r = max(float(np.linalg.norm(diff)), rho)
    return -diff / (sphere_area(N) * r**N)
