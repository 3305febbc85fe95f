"""Pydantic schemas for reports and run configurations."""
from .report import IdentityReport, RefinementStep, ReportParams, relative_residual
from .run_config import RunConfig

__all__ = [
    "IdentityReport",
    "RefinementStep",
    "ReportParams",
    "RunConfig",
    "relative_residual",
]
