"""Run configuration accepted by the command-line front end."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _parse_list(value: Any, cast: type) -> Any:
    if value is None or isinstance(value, list | tuple):
        return value
    if isinstance(value, int | float):
        return [value]
    if isinstance(value, str):
        text = value.strip().strip("[]()")
        if not text:
            return None
        try:
            return [cast(part) for part in text.replace(";", ",").split(",") if part.strip()]
        except ValueError as exc:
            raise ValueError(f"cannot parse {value!r} as a comma-separated list") from exc
    return value


class RunConfig(BaseModel):
    """One CLI invocation, assembled from a config file and flags (flags win)."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    identity_id: str = Field(..., min_length=1, description="Identity to verify")
    N: int = Field(3, ge=1, alias="dim", description="Ambient dimension")
    s: float = Field(0.5, gt=0, le=1, description="Order of the operator")
    R: float = Field(1.0, gt=0, description="Ball radius")
    x: list[float] = Field(..., description="First pole")
    y: list[float] | None = Field(None, description="Second pole")
    xi: list[float] | None = Field(None, description="Centre of the Pohozaev field")
    axis: int | None = Field(None, ge=0, description="Component index of the vector identity")
    orders: list[int] | None = Field(None, description="Quadrature order ladder")
    rhos: list[float] | None = Field(None, description="Mollification radii")
    tolerance: float | None = Field(None, gt=0, alias="tol", description="Relative tolerance")
    output: Path | None = Field(None, description="Directory for report files")
    seed: int = Field(0, ge=0, description="Seed for sampled sphere rules")
    sampled: bool = Field(False, description="Use a Monte-Carlo sphere rule (any N >= 2)")

    @field_validator("x", "y", "xi", "rhos", mode="before")
    @classmethod
    def _parse_floats(cls, value: Any) -> Any:
        return _parse_list(value, float)

    @field_validator("orders", mode="before")
    @classmethod
    def _parse_orders(cls, value: Any) -> Any:
        return _parse_list(value, int)

    @field_validator("orders")
    @classmethod
    def _orders_increase(cls, value: list[int] | None) -> list[int] | None:
        if value is None:
            return value
        if not value or any(order < 1 for order in value):
            raise ValueError("orders must be a non-empty list of positive integers")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("orders must be strictly increasing")
        return value

    @field_validator("rhos")
    @classmethod
    def _rhos_decrease(cls, value: list[float] | None) -> list[float] | None:
        if value is None:
            return value
        if not value or any(rho <= 0 for rho in value):
            raise ValueError("rhos must be positive")
        if any(b >= a for a, b in zip(value, value[1:])):
            raise ValueError("rhos must be strictly decreasing")
        return value

    @model_validator(mode="after")
    def _dimensions_match(self) -> RunConfig:
        for name in ("x", "y", "xi"):
            point = getattr(self, name)
            if point is not None and len(point) != self.N:
                raise ValueError(f"{name} has {len(point)} coordinates but dim is {self.N}")
        if self.axis is not None and self.axis >= self.N:
            raise ValueError(f"axis {self.axis} is out of range for dim {self.N}")
        return self
