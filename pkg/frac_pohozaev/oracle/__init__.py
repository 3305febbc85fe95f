"""Independent quadrature oracle for the fractional Laplacian."""
from .fields import (
    SmoothField,
    bump,
    eigen_bump,
    linear_combination,
    product,
    regular_part_field,
    scaled,
    translated,
)
from .principal_value import (
    MIN_BOUNDARY_MARGIN,
    OracleBudget,
    bilinear_I_s,
    finite_difference_laplacian,
    frac_laplacian_pv,
    product_rule_residual,
    s_harmonicity_residual,
)

__all__ = [
    "MIN_BOUNDARY_MARGIN",
    "OracleBudget",
    "SmoothField",
    "bilinear_I_s",
    "bump",
    "eigen_bump",
    "finite_difference_laplacian",
    "frac_laplacian_pv",
    "linear_combination",
    "product",
    "product_rule_residual",
    "regular_part_field",
    "s_harmonicity_residual",
    "scaled",
    "translated",
]
