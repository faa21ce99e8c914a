"""Closed-form optimum for a prescribed arrival time.

The arrival time ``t_p`` fixes the average speed over the road. If the vehicle
must average more than ``v0`` it accelerates (cases I-V). If it must average
exactly ``v0`` it cruises (case VI). Otherwise it decelerates (cases VII-X,
the mirror images of II-V with ``u_min`` and ``v_min`` in place of ``u_max``
and ``v_max``). Each case has its own feasibility conditions. All feasible
cases are enumerated and the one with the least energy wins.
"""

import logging
import math

from ecoand.config import settings
from ecoand.exceptions import TooLateError, UnreachableError
from ecoand.models.profile import Phase, Profile
from ecoand.models.scenario import Scenario, VehicleState
from ecoand.models.solution import FixedCase, FixedCaseId, Solution, Weights
from ecoand.solvers.free_horizon import build_solution

logger = logging.getLogger(__name__)

TOL = settings.FEASIBILITY_TOLERANCE


def reachability_h(s: Scenario, t_p: float) -> float:
    """Surplus distance coverable by full throttle before ``t_p``.

    Negative means the stop line cannot be reached by ``t_p``.
    """
    horizon = t_p - s.t0
    if horizon <= 0:
        raise ValueError(f"Arrival time {t_p} must be after t0={s.t0}")
    u = s.limits.u_max
    v_max = s.limits.v_max
    time_to_v_max = (v_max - s.v0) / u
    if horizon <= time_to_v_max:
        return s.v0 * horizon + 0.5 * u * horizon * horizon - s.l
    return v_max * horizon - 0.5 * (v_max - s.v0) ** 2 / u - s.l


def earliest_arrival(s: Scenario) -> float:
    """Arrival time under full throttle up to ``v_max`` followed by a cruise."""
    u = s.limits.u_max
    v_max = s.limits.v_max
    accel_distance = (v_max**2 - s.v0**2) / (2.0 * u)
    if accel_distance >= s.l:
        return s.t0 + (math.sqrt(s.v0**2 + 2.0 * u * s.l) - s.v0) / u
    return s.t0 + (v_max - s.v0) / u + (s.l - accel_distance) / v_max


def latest_arrival(s: Scenario) -> float:
    """Arrival time under full braking down to ``v_min`` followed by a cruise."""
    brake = -s.limits.u_min
    v_min = s.limits.v_min
    brake_distance = (s.v0**2 - v_min**2) / (2.0 * brake)
    if brake_distance >= s.l:
        return s.t0 + (s.v0 - math.sqrt(max(s.v0**2 - 2.0 * brake * s.l, 0.0))) / brake
    return s.t0 + (s.v0 - v_min) / brake + (s.l - brake_distance) / v_min


def _start(s: Scenario) -> VehicleState:
    return VehicleState(t=s.t0, x=0.0, v=s.v0)


def _case(s: Scenario, case_id: FixedCaseId, energy: float, phases: list[Phase], **params: float) -> FixedCase:
    return FixedCase(
        case_id=case_id,
        energy=max(energy, 0.0),
        profile=Profile(start=_start(s), phases=tuple(phases)),
        params=params,
    )


def _within(value: float, low: float, high: float) -> bool:
    return low - TOL <= value <= high + TOL


def _clamp(value: float, low: float, high: float) -> float:
    return min(max(value, low), high)


def _bang_ramp_cruise(
    s: Scenario, horizon: float, u: float, bound: float, case_id: FixedCaseId
) -> FixedCase | None:
    """Saturated hold, ramp to zero reaching ``bound``, then cruise at ``bound``."""
    span = (bound - s.v0) / u
    if span <= 0:
        return None
    disc = 6.0 * (bound * horizon - s.l) / u - 3.0 * span * span
    if disc < -TOL:
        return None
    hold = span - math.sqrt(max(disc, 0.0))
    if not _within(hold, max(0.0, 2.0 * span - horizon), span):
        return None
    hold = _clamp(hold, max(0.0, 2.0 * span - horizon), span)
    ramp = 2.0 * (span - hold)
    energy = u * u * (hold / 3.0 + 2.0 * span / 3.0)
    return _case(
        s,
        case_id,
        energy,
        [Phase.hold(u, hold), Phase.ramp(u, ramp), Phase.hold(0.0, horizon - hold - ramp)],
        t1=s.t0 + hold,
        tau=s.t0 + hold + ramp,
        v_tp=bound,
        u_t0=u,
    )


def _bang_ramp(s: Scenario, horizon: float, u: float, bound: float, case_id: FixedCaseId) -> FixedCase | None:
    """Saturated hold then a ramp to zero that ends at the stop line."""
    deficit = s.l - s.v0 * horizon
    disc = 3.0 * horizon * horizon - 6.0 * deficit / u
    if disc < -TOL:
        return None
    ramp = math.sqrt(max(disc, 0.0))
    hold = horizon - ramp
    if not _within(hold, 0.0, horizon):
        return None
    hold = _clamp(hold, 0.0, horizon)
    ramp = horizon - hold
    v_tp = s.v0 + u * (hold + horizon) / 2.0
    if (bound - v_tp) * u < -TOL:
        return None
    energy = u * u * (horizon + 2.0 * hold) / 3.0
    return _case(
        s,
        case_id,
        energy,
        [Phase.hold(u, hold), Phase.ramp(u, ramp)],
        t1=s.t0 + hold,
        v_tp=v_tp,
        u_t0=u,
    )


def _ramp_cruise(
    s: Scenario, horizon: float, u_limit: float, bound: float, case_id: FixedCaseId
) -> FixedCase | None:
    """Unsaturated ramp to zero reaching ``bound``, then cruise at ``bound``."""
    gap = bound - s.v0
    if gap * u_limit <= 0:
        return None
    ramp = 3.0 * (bound * horizon - s.l) / gap
    if not (ramp > 0 and ramp <= horizon + TOL):
        return None
    ramp = min(ramp, horizon)
    u0 = 2.0 * gap / ramp
    if abs(u0) > abs(u_limit) + TOL:
        return None
    energy = 4.0 / 3.0 * gap * gap / ramp
    return _case(
        s,
        case_id,
        energy,
        [Phase.ramp(u0, ramp), Phase.hold(0.0, horizon - ramp)],
        tau=s.t0 + ramp,
        v_tp=bound,
        u_t0=u0,
    )


def _ramp(s: Scenario, horizon: float, u_limit: float, bound: float, case_id: FixedCaseId) -> FixedCase | None:
    """A single unsaturated ramp to zero over the whole horizon."""
    deficit = s.l - s.v0 * horizon
    u0 = 3.0 * deficit / (horizon * horizon)
    if abs(u0) > abs(u_limit) + TOL:
        return None
    v_tp = s.v0 + 1.5 * deficit / horizon
    if (bound - v_tp) * u_limit < -TOL:
        return None
    energy = 3.0 * deficit * deficit / horizon**3
    return _case(s, case_id, energy, [Phase.ramp(u0, horizon)], v_tp=v_tp, u_t0=u0)


def _full_throttle(s: Scenario, horizon: float) -> FixedCase:
    u = s.limits.u_max
    v_max = s.limits.v_max
    time_to_v_max = (v_max - s.v0) / u
    if horizon <= time_to_v_max:
        return _case(s, FixedCaseId.I, u * u * horizon, [Phase.hold(u, horizon)], v_tp=s.v0 + u * horizon, u_t0=u)
    return _case(
        s,
        FixedCaseId.I,
        u * u * time_to_v_max,
        [Phase.hold(u, time_to_v_max), Phase.hold(0.0, horizon - time_to_v_max)],
        tau=s.t0 + time_to_v_max,
        v_tp=v_max,
        u_t0=u,
    )


def solve_accel_cases(s: Scenario, t_p: float) -> list[FixedCase]:
    """Enumerate the feasible accelerating cases for arrival at ``t_p``.

    Args:
        s: Scenario with ``l > v0 * (t_p - t0)``
        t_p: Arrival time

    Returns:
        Feasible cases among I-V, each with its profile and energy
    """
    horizon = t_p - s.t0
    if abs(reachability_h(s, t_p)) <= TOL * s.l:
        return [_full_throttle(s, horizon)]

    u = s.limits.u_max
    v_max = s.limits.v_max
    candidates = [
        _bang_ramp_cruise(s, horizon, u, v_max, FixedCaseId.II),
        _bang_ramp(s, horizon, u, v_max, FixedCaseId.III),
        _ramp_cruise(s, horizon, u, v_max, FixedCaseId.IV),
        _ramp(s, horizon, u, v_max, FixedCaseId.V),
    ]
    return [case for case in candidates if case is not None]


def solve_decel_cases(s: Scenario, t_p: float) -> list[FixedCase]:
    """Enumerate the feasible decelerating cases VII-X for arrival at ``t_p``."""
    horizon = t_p - s.t0
    u = s.limits.u_min
    v_min = s.limits.v_min
    candidates = [
        _bang_ramp_cruise(s, horizon, u, v_min, FixedCaseId.VII),
        _bang_ramp(s, horizon, u, v_min, FixedCaseId.VIII),
        _ramp_cruise(s, horizon, u, v_min, FixedCaseId.IX),
        _ramp(s, horizon, u, v_min, FixedCaseId.X),
    ]
    return [case for case in candidates if case is not None]


def solve_fixed(s: Scenario, w: Weights, t_p: float) -> Solution:
    """Minimum-energy arrival at exactly ``t_p``.

    Args:
        s: Scenario
        w: Weights used for the reported weighted cost
        t_p: Arrival time, after ``s.t0``

    Returns:
        The least-energy feasible case as a Solution

    Raises:
        UnreachableError: If even full throttle arrives after ``t_p``
        TooLateError: If even full braking arrives before ``t_p``
    """
    horizon = t_p - s.t0
    if horizon <= 0:
        raise ValueError(f"Arrival time {t_p} must be after t0={s.t0}")

    latest = latest_arrival(s)
    if t_p > latest + TOL * max(1.0, abs(latest)):
        raise TooLateError(f"Arrival at {t_p:.6g} s is later than the latest possible {latest:.6g} s")
    if reachability_h(s, t_p) < -TOL * s.l:
        raise UnreachableError(f"Arrival at {t_p:.6g} s is earlier than full throttle allows")

    deficit = s.l - s.v0 * horizon
    if abs(deficit) <= TOL * s.l:
        cases = [_case(s, FixedCaseId.VI, 0.0, [Phase.hold(0.0, horizon)], v_tp=s.v0, u_t0=0.0)]
        bound = s.limits.v_max
    elif deficit > 0:
        cases = solve_accel_cases(s, t_p)
        bound = s.limits.v_max
    else:
        cases = solve_decel_cases(s, t_p)
        bound = s.limits.v_min

    if not cases:
        # Only reachable through rounding at the feasibility boundary
        if deficit > 0:
            raise UnreachableError(f"No accelerating case is feasible for arrival at {t_p:.6g} s")
        raise TooLateError(f"No decelerating case is feasible for arrival at {t_p:.6g} s")

    best = min(cases, key=lambda case: case.energy)
    logger.debug(
        f"Fixed arrival {t_p:.6g}: feasible {[c.case_id.value for c in cases]}, chose {best.case_id.value}",
    )
    return build_solution(s, w, best.profile, best.case_id.value, bound)
