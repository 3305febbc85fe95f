"""Special functions and normalization constants."""
from .special_functions import (
    ConstantSet,
    FracParams,
    OperatorParams,
    beta_fn,
    fundamental_constant_literal,
    gamma_fn,
    incomplete_beta_lower,
    log_gamma,
    make_constants,
    normalization_constant,
    sphere_area,
)

__all__ = [
    "ConstantSet",
    "FracParams",
    "OperatorParams",
    "beta_fn",
    "fundamental_constant_literal",
    "gamma_fn",
    "incomplete_beta_lower",
    "log_gamma",
    "make_constants",
    "normalization_constant",
    "sphere_area",
]
