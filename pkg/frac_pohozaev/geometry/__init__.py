"""Ball geometry and sphere quadrature."""
from .ball_domain import (
    BOUNDARY_TOLERANCE,
    BallDomain,
    BallRule,
    Point,
    SphereRule,
    as_point,
    ball_quadrature,
    boundary_quadrature,
    dist_to_boundary,
    outward_normal,
)

__all__ = [
    "BOUNDARY_TOLERANCE",
    "BallDomain",
    "BallRule",
    "Point",
    "SphereRule",
    "as_point",
    "ball_quadrature",
    "boundary_quadrature",
    "dist_to_boundary",
    "outward_normal",
]
