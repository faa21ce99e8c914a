"""Piecewise control profiles.

Every optimal control in this package is a concatenation of two primitive
phases: a constant hold and a linear ramp that decays to zero.
"""

from enum import Enum
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field

from ecoand.models.scenario import VehicleState


class PhaseKind(str, Enum):
    HOLD = "hold"
    RAMP_TO_ZERO = "ramp"


class Phase(BaseModel):
    """A single control phase.

    For ``HOLD`` the control is ``u`` throughout. For ``RAMP_TO_ZERO`` the
    control starts at ``u`` and falls linearly to zero at the end of the
    phase, i.e. ``u(s) = u * (dt - s) / dt``.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: PhaseKind
    u: float
    dt: Annotated[float, Field(ge=0.0, description="Phase duration in seconds")]

    @classmethod
    def hold(cls, u: float, dt: float) -> "Phase":
        return cls(kind=PhaseKind.HOLD, u=u, dt=max(dt, 0.0))

    @classmethod
    def ramp(cls, u_start: float, dt: float) -> "Phase":
        return cls(kind=PhaseKind.RAMP_TO_ZERO, u=u_start, dt=max(dt, 0.0))

    @property
    def slope(self) -> float:
        """Control slope of a ramp (zero for holds and empty ramps)."""
        if self.kind is PhaseKind.HOLD or self.dt == 0.0:
            return 0.0
        return -self.u / self.dt

    def describe(self) -> str:
        label = "Hold" if self.kind is PhaseKind.HOLD else "RampToZero"
        return f"{label}(u={self.u:.6g}, dt={self.dt:.6g})"


class Profile(BaseModel):
    """Ordered control phases applied from ``start``."""

    model_config = ConfigDict(frozen=True)

    start: VehicleState
    phases: tuple[Phase, ...]

    @property
    def duration(self) -> float:
        return sum(phase.dt for phase in self.phases)

    @property
    def t_end(self) -> float:
        """Arrival time ``start.t + sum(dt)``."""
        return self.start.t + self.duration

    def describe(self) -> str:
        return " -> ".join(phase.describe() for phase in self.phases)
