"""Scenario types and traffic-light schedule queries.

A scenario describes one approach to a signalized intersection: the vehicle
state at ``t0``, the distance ``l`` to the stop line, the admissible speed and
acceleration bounds, the time/energy trade-off ``rho`` and the light schedule.
"""

import math

from pydantic import BaseModel, ConfigDict, ValidationError

from ecoand.exceptions import ScenarioValidationError

# Relative slack on green-window edges so that boundary instants such as
# offset + duty * period survive floating-point rounding.
GREEN_EDGE_TOLERANCE = 1e-12


class Limits(BaseModel):
    """Speed and acceleration bounds of the vehicle."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    v_min: float
    v_max: float
    u_min: float
    u_max: float


class LightSchedule(BaseModel):
    """Periodic green/red light.

    Green occupies the first ``duty * period`` seconds of every cycle, cycles
    start at ``offset + k * period``.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    period: float
    duty: float
    offset: float = 0.0

    @property
    def green_length(self) -> float:
        return self.duty * self.period


class Scenario(BaseModel):
    """One intersection approach, with the stop line at position ``l``."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    t0: float = 0.0
    v0: float
    l: float  # noqa: E741
    limits: Limits
    rho: float
    light: LightSchedule


class VehicleState(BaseModel):
    """Time, position and speed of the vehicle."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    t: float
    x: float
    v: float


class RedWindow(BaseModel):
    """Green instants bracketing a red time."""

    model_config = ConfigDict(frozen=True)

    prev_green_end: float | None
    next_green_start: float


def _cycle_phase(schedule: LightSchedule, t: float) -> float:
    # Python's % already maps negative (t - offset) into [0, period)
    return (t - schedule.offset) % schedule.period


def is_green(schedule: LightSchedule, t: float) -> bool:
    """Check whether the light is green at time ``t``.

    Both window endpoints count as green.

    Args:
        schedule: Light schedule to query
        t: Absolute time in seconds

    Returns:
        True if the light shows green at ``t``
    """
    phase = _cycle_phase(schedule, t)
    edge = GREEN_EDGE_TOLERANCE * schedule.period
    return phase <= schedule.green_length + edge or phase >= schedule.period - edge


def red_window_bounds(schedule: LightSchedule, t: float) -> RedWindow | None:
    """Locate the green instants around a red time.

    Args:
        schedule: Light schedule to query
        t: Absolute time in seconds

    Returns:
        None when ``t`` is green, otherwise the latest green instant before ``t``
        (None if ``t`` precedes the first green window at ``offset``) and the
        earliest green instant after ``t``
    """
    if is_green(schedule, t):
        return None

    k = math.floor((t - schedule.offset) / schedule.period)
    cycle_start = schedule.offset + k * schedule.period
    prev_end = cycle_start + schedule.green_length if k >= 0 else None
    return RedWindow(prev_green_end=prev_end, next_green_start=cycle_start + schedule.period)


def collect_violations(s: Scenario) -> list[str]:
    """List every invariant the scenario breaks, in a stable order."""
    violations: list[str] = []
    limits = s.limits

    if limits.v_min <= 0:
        violations.append("v_min must be positive")
    if limits.v_min >= limits.v_max:
        violations.append("v_min must be less than v_max")
    if limits.u_min >= 0:
        violations.append("u_min must be negative")
    if limits.u_max <= 0:
        violations.append("u_max must be positive")
    if s.l <= 0:
        violations.append("l must be positive")
    if s.v0 < limits.v_min:
        violations.append("v0 is below v_min")
    if s.v0 > limits.v_max:
        violations.append("v0 exceeds v_max")
    if not 0.0 <= s.rho <= 1.0:
        violations.append("rho must be in [0,1]")
    if s.light.period <= 0:
        violations.append("period must be positive")
    if not 0.0 < s.light.duty < 1.0:
        violations.append("duty must be in (0,1)")

    return violations


def validate_scenario(s: Scenario) -> Scenario:
    """Check all scenario invariants.

    Args:
        s: Scenario to check

    Returns:
        The same scenario, unchanged

    Raises:
        ScenarioValidationError: Listing every violated invariant
    """
    violations = collect_violations(s)
    if violations:
        raise ScenarioValidationError(violations)
    return s


def build_scenario(**fields: object) -> Scenario:
    """Construct and validate a scenario from plain values.

    Pydantic type errors are reported as ``ScenarioValidationError`` so that
    callers only have to handle one exception type.
    """
    try:
        scenario = Scenario.model_validate(fields)
    except ValidationError as e:
        raise ScenarioValidationError(
            [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()],
        ) from e
    return validate_scenario(scenario)
