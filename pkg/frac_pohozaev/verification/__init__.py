"""Identity verifiers, refinement driver and identity registry."""
from .error_handling import (
    EXIT_INVALID_CONFIG,
    EXIT_NUMERICAL_FAILURE,
    EXIT_OK,
    EXIT_RESIDUAL,
    VerificationErrorReport,
    build_error_report,
)
from .identities import (
    verify_bilinear,
    verify_bilinear_general,
    verify_difference_remark,
    verify_local_bilinear,
    verify_local_robin_identity,
    verify_local_vector_identity,
    verify_robin_identity,
)
from .mollified import (
    MollifiedTerms,
    first_order_rate,
    local_rhs,
    mollified_limit_terms,
    verify_mollified_limit,
)
from .refinement import RefinementResult, plateau_reached, refine, resolve_orders
from .registry import get_identity, list_identities, register_identity, run_identity
from .suite import acceptance_suite

__all__ = [
    "EXIT_INVALID_CONFIG",
    "EXIT_NUMERICAL_FAILURE",
    "EXIT_OK",
    "EXIT_RESIDUAL",
    "MollifiedTerms",
    "RefinementResult",
    "VerificationErrorReport",
    "acceptance_suite",
    "build_error_report",
    "first_order_rate",
    "get_identity",
    "list_identities",
    "local_rhs",
    "mollified_limit_terms",
    "plateau_reached",
    "refine",
    "register_identity",
    "resolve_orders",
    "run_identity",
    "verify_bilinear",
    "verify_bilinear_general",
    "verify_difference_remark",
    "verify_local_bilinear",
    "verify_local_robin_identity",
    "verify_local_vector_identity",
    "verify_mollified_limit",
    "verify_robin_identity",
]
