"""Shared result type and point helpers for the kernel evaluators."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from ..exceptions import DomainError
from ..geometry.ball_domain import BallDomain, Point

Slot = Literal["in_x", "in_y"]
FieldFunction = Callable[[Point], float]


class KernelMethod(str, Enum):
    """How a kernel value was obtained."""

    CLOSED_FORM = "closed_form"
    ANALYTIC_LIMIT = "analytic_limit"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True, slots=True)
class KernelEval:
    """A kernel value, its optional gradient, and the method that produced it."""

    value: float
    method: KernelMethod = KernelMethod.CLOSED_FORM
    grad: NDArray[np.float64] | None = None


def check_slot(which: str) -> Slot:
    """Validate the gradient slot name ("in_x" = first argument, "in_y" = second)."""

    if which not in ("in_x", "in_y"):
        raise DomainError(f"which must be 'in_x' or 'in_y', got {which!r}")
    return which  # type: ignore[return-value]


def distinct_interior_pair(d: BallDomain, x: object, y: object) -> tuple[Point, Point, float]:
    """Return validated interior points and their distance, rejecting coincidence."""

    px = d.require_interior(x, "x")
    py = d.require_interior(y, "y")
    dist = float(np.linalg.norm(px - py))
    if dist == 0.0:
        raise DomainError(f"coincident points {px.tolist()}")
    return px, py, dist


def closed_ball_point(d: BallDomain, z: object, name: str) -> Point:
    """Return ``z`` as a point of the closed ball, raising DomainError outside it."""

    point = d.point(z)
    if float(np.linalg.norm(point)) > d.R * (1.0 + 1e-14):
        raise DomainError(f"{name} {point.tolist()} lies outside the closed ball of radius {d.R}")
    return point


def finite_difference_gradient(
    func: FieldFunction,
    z: Point,
    step: float,
    *,
    richardson: bool = True,
) -> KernelEval:
    """Central-difference gradient of a scalar function, optionally Richardson-extrapolated."""

    z = np.asarray(z, dtype=np.float64)
    grad = np.empty_like(z)
    for k in range(z.shape[0]):
        e = np.zeros_like(z)
        e[k] = 1.0

        def central(h: float) -> float:
            return (func(z + h * e) - func(z - h * e)) / (2.0 * h)

        if richardson:
            grad[k] = (4.0 * central(step / 2.0) - central(step)) / 3.0
        else:
            grad[k] = central(step)
    return KernelEval(value=func(z), method=KernelMethod.FINITE_DIFFERENCE, grad=grad)
