"""Pydantic schemas for identity reports and run configurations."""

from __future__ import annotations

import math
from typing import Any

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
    model_validator,
)

TINY = 1e-300


def relative_residual(lhs: float, rhs: float) -> float:
    """Return |lhs − rhs| / max(|lhs|, |rhs|, tiny)."""

    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), TINY)


class RefinementStep(BaseModel):
    """One rung of a refinement ladder."""

    model_config = ConfigDict(frozen=True)

    order: int = Field(..., ge=1, description="Quadrature order (or 1/ρ for mollified runs)")
    lhs: float = Field(..., description="Left-hand side at this order")
    rhs: float = Field(..., description="Right-hand side at this order")
    residual: float = Field(..., ge=0, description="Relative residual at this order")
    seconds: float = Field(0.0, ge=0, description="Wall time spent on this order")


class ReportParams(BaseModel):
    """Parameters an identity was evaluated at."""

    N: int = Field(..., ge=1, description="Ambient dimension")
    s: float = Field(..., description="Order of the operator (1 = classical Laplacian)")
    R: float = Field(..., gt=0, description="Ball radius")
    x: list[float] = Field(..., description="First pole")
    y: list[float] | None = Field(None, description="Second pole")
    xi: list[float] | None = Field(None, description="Centre of the Pohozaev vector field")
    axis: int | None = Field(None, description="Component index for the vector identity")


class IdentityReport(BaseModel):
    """Both sides of one identity together with their residuals and refinement history."""

    identity_id: str = Field(..., description="Registered identity id")
    params: ReportParams
    lhs: float
    rhs: float
    abs_residual: float = Field(..., ge=0)
    rel_residual: float = Field(..., ge=0)
    quad_order: int = Field(..., ge=1, description="Order of the final rung")
    refinement_history: list[RefinementStep] = Field(default_factory=list)
    wall_time: float = Field(0.0, ge=0, description="Seconds spent on the whole ladder")
    warnings: list[str] = Field(default_factory=list)
    tolerance: float | None = Field(None, gt=0, description="Relative tolerance applied")
    passed: bool | None = Field(None, description="Whether the residual met the tolerance")

    @field_validator("refinement_history")
    @classmethod
    def _orders_increase(cls, value: list[RefinementStep]) -> list[RefinementStep]:
        orders = [step.order for step in value]
        if any(b <= a for a, b in zip(orders, orders[1:])):
            raise ValueError(f"refinement orders must be strictly increasing, got {orders}")
        return value

    @model_validator(mode="after")
    def _residuals_consistent(self) -> IdentityReport:
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise ValueError(f"non-finite sides: lhs={self.lhs!r}, rhs={self.rhs!r}")
        expected = abs(self.lhs - self.rhs)
        if not math.isclose(self.abs_residual, expected, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError(
                f"abs_residual {self.abs_residual!r} does not equal |lhs - rhs| = {expected!r}"
            )
        return self

    @classmethod
    def from_sides(
        cls,
        identity_id: str,
        params: ReportParams,
        lhs: float,
        rhs: float,
        **fields: Any,
    ) -> IdentityReport:
        """Build a report, deriving both residuals from the two sides."""

        return cls(
            identity_id=identity_id,
            params=params,
            lhs=lhs,
            rhs=rhs,
            abs_residual=abs(lhs - rhs),
            rel_residual=relative_residual(lhs, rhs),
            **fields,
        )

    def evaluate(self, tolerance: float, absolute_floor: float = 0.0) -> IdentityReport:
        """Return a copy marked passed/failed against ``tolerance``.

        A report also passes when both sides vanish to within ``absolute_floor``, which
        covers components that are zero by symmetry.
        """

        passed = self.rel_residual <= tolerance or self.abs_residual <= absolute_floor
        return self.model_copy(update={"tolerance": tolerance, "passed": passed})

    def to_document(self, *, timings: bool = True) -> dict[str, Any]:
        """Return the published JSON document for this report."""

        return {
            "identity_id": self.identity_id,
            "params": self.params.model_dump(exclude_none=True),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "quad_order": self.quad_order,
            "history": [
                {"order": step.order, "residual": step.residual}
                for step in self.refinement_history
            ],
            "wall_time_s": self.wall_time if timings else 0.0,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "warnings": list(self.warnings),
        }

    def history_rows(self, *, timings: bool = True) -> list[dict[str, float | int]]:
        """Rows of the CSV refinement table."""

        return [
            {
                "order": step.order,
                "lhs": step.lhs,
                "rhs": step.rhs,
                "abs_residual": abs(step.lhs - step.rhs),
                "rel_residual": step.residual,
                "seconds": step.seconds if timings else 0.0,
            }
            for step in self.refinement_history
        ]
