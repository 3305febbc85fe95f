"""Order-refinement driver shared by the identity verifiers."""

from __future__ import annotations

import time
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import DomainError
from ..geometry.ball_domain import BallDomain, Point
from ..schemas.report import RefinementStep, relative_residual

Evaluator = Callable[[int], tuple[float, float]]

PLATEAU_WINDOW = 3


@dataclass(slots=True)
class RefinementResult:
    """Final sides of a refinement ladder and the history that produced them."""

    lhs: float
    rhs: float
    order: int
    history: list[RefinementStep] = field(default_factory=list)
    wall_time: float = 0.0
    plateau: bool = False


def resolve_orders(order: int | Sequence[int] | None, default: Sequence[int]) -> list[int]:
    """Turn the ``order`` argument of a verifier into a ladder.

    ``None`` uses the configured ladder, an integer gives a single rung, and a sequence
    must be strictly increasing.
    """

    if order is None:
        ladder = list(default)
    elif isinstance(order, int | np.integer):
        ladder = [int(order)]
    else:
        ladder = [int(o) for o in order]
    if not ladder or any(o < 1 for o in ladder):
        raise DomainError(f"quadrature orders must be positive integers, got {ladder}")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError(f"quadrature orders must be strictly increasing, got {ladder}")
    return ladder


def plateau_reached(residuals: Sequence[float], plateau_factor: float, noise_floor: float) -> bool:
    """True when the last three residuals all lie within ``plateau_factor``× the noise floor.

    A ladder that stalls above that level is not a plateau: it keeps refining.
    """

    if len(residuals) < PLATEAU_WINDOW:
        return False
    return max(residuals[-PLATEAU_WINDOW:]) <= plateau_factor * noise_floor


def refine(
    evaluate: Evaluator,
    orders: Sequence[int],
    *,
    plateau_factor: float = 2.0,
    noise_floor: float = 1e-14,
    clock: Callable[[], float] = time.perf_counter,
) -> RefinementResult:
    """Evaluate both sides along ``orders`` until the ladder ends or the residual plateaus."""

    history: list[RefinementStep] = []
    started = clock()
    lhs = rhs = 0.0
    order = orders[0]
    plateau = False
    for order in orders:
        step_started = clock()
        lhs, rhs = evaluate(order)
        history.append(
            RefinementStep(
                order=order,
                lhs=lhs,
                rhs=rhs,
                residual=relative_residual(lhs, rhs),
                seconds=max(clock() - step_started, 0.0),
            )
        )
        if plateau_reached([step.residual for step in history], plateau_factor, noise_floor):
            plateau = True
            break
    return RefinementResult(
        lhs=lhs,
        rhs=rhs,
        order=order,
        history=history,
        wall_time=max(clock() - started, 0.0),
        plateau=plateau,
    )


def boundary_warnings(d: BallDomain, points: Mapping[str, Point], fraction: float) -> list[str]:
    """Conditioning warnings for evaluation points closer than fraction·R to the sphere."""

    warnings: list[str] = []
    for name, point in points.items():
        margin = d.R - float(np.linalg.norm(point))
        if margin < fraction * d.R:
            warnings.append(
                f"{name} is {margin:.3g} from the boundary (< {fraction:g}·R); the boundary "
                "integrand is sharply peaked and the quadrature may converge slowly"
            )
    return warnings
