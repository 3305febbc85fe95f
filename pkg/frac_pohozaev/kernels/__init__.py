"""Green, Robin and trace kernels of the ball for 0 < s <= 1."""
from .base import KernelEval, KernelMethod, finite_difference_gradient
from .classical import (
    grad_G1,
    grad_H1,
    green1_G,
    local_params,
    normal_derivative_G1,
    regular1_H,
    robin_R1,
)
from .fractional import (
    COINCIDENCE_THRESHOLD,
    ball_green_G,
    boundary_trace,
    fundamental_F,
    grad_F,
    grad_G,
    grad_H,
    regular_part_eval,
    regular_part_H,
    robin_R,
)
from .mollified import grad_mollified_v, mollified_dirac, mollified_fundamental_v

__all__ = [
    "COINCIDENCE_THRESHOLD",
    "KernelEval",
    "KernelMethod",
    "ball_green_G",
    "boundary_trace",
    "finite_difference_gradient",
    "fundamental_F",
    "grad_F",
    "grad_G",
    "grad_G1",
    "grad_H",
    "grad_H1",
    "grad_mollified_v",
    "green1_G",
    "local_params",
    "mollified_dirac",
    "mollified_fundamental_v",
    "normal_derivative_G1",
    "regular1_H",
    "regular_part_eval",
    "regular_part_H",
    "robin_R",
    "robin_R1",
]
