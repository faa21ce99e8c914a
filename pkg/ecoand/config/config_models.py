"""Configuration models for oracle grids and vehicle limit presets.

This module contains Pydantic models describing the named presets shipped in
``presets.yaml``.
"""

from typing import Annotated

from pydantic import BaseModel, Field, model_validator

from ecoand.models.scenario import Limits


class GridSpec(BaseModel):
    """Resolution of the dynamic-programming oracle."""

    dt: Annotated[float, Field(gt=0.0, description="Time step in seconds")]
    dv: Annotated[float, Field(gt=0.0, description="Speed grid spacing in m/s")]
    dx: Annotated[float, Field(gt=0.0, description="Tolerated terminal position miss in metres")]
    control_levels: Annotated[
        int,
        Field(ge=3, description="Number of control values spanning [u_min, u_max]; zero is always added"),
    ] = 59
    refine: Annotated[
        bool,
        Field(description="Repeat the search on control levels spanning only the first pass controls"),
    ] = True
    description: str | None = None


class LimitsPreset(BaseModel):
    """Named vehicle limits."""

    v_min: Annotated[float, Field(gt=0.0, description="Minimum speed in m/s")]
    v_max: Annotated[float, Field(gt=0.0, description="Maximum speed in m/s")]
    u_min: Annotated[float, Field(lt=0.0, description="Maximum deceleration in m/s^2 (negative)")]
    u_max: Annotated[float, Field(gt=0.0, description="Maximum acceleration in m/s^2")]
    description: str | None = None

    @model_validator(mode="after")
    def check_speed_order(self) -> "LimitsPreset":
        if self.v_min >= self.v_max:
            raise ValueError("v_min must be less than v_max")
        return self

    def to_limits(self) -> Limits:
        return Limits(v_min=self.v_min, v_max=self.v_max, u_min=self.u_min, u_max=self.u_max)


class PresetRegistry(BaseModel):
    """Registry of all named presets."""

    grids: dict[str, GridSpec]
    limits: dict[str, LimitsPreset] = Field(default_factory=dict)
