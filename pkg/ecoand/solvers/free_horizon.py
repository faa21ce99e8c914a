"""Closed-form optimum when the arrival time is free.

Without the light, the optimal control never brakes. It is a full-throttle
hold, then a ramp down to zero, then a cruise. Depending on the initial speed
and the road length, some of these phases are absent. Four shapes
(``FreeColumn``) cover every scenario with both weights positive. The two
single-objective corner cases (pure energy, pure time) are handled directly.
"""

import logging
import math

from scipy.optimize import bisect

from ecoand.config import settings
from ecoand.exceptions import RootBracketError
from ecoand.models.profile import Phase, Profile
from ecoand.models.scenario import Scenario, VehicleState
from ecoand.models.solution import FreeCase, FreeColumn, Solution, Weights
from ecoand.solvers.weights import total_cost
from ecoand.utils.kinematics import first_time_at_speed, profile_end, profile_energy

logger = logging.getLogger(__name__)


def cruise_margin(s: Scenario, w: Weights) -> float:
    """Distance left for cruising after a full-throttle hold and ramp up to ``v_max``.

    Negative when the road is too short for the full hold-and-ramp shape.
    """
    u = s.limits.u_max
    v_max = s.limits.v_max
    r = w.ratio
    return (
        s.l
        - (v_max**2 - s.v0**2) / (2.0 * u)
        - u * v_max**2 * r
        + u**3 * v_max**2 * r**2 / 6.0
    )


def ramp_cruise_margin(s: Scenario, w: Weights) -> float:
    """Distance left for cruising after a single ramp from ``v0`` up to ``v_max``."""
    v_max = s.limits.v_max
    half = math.sqrt((v_max - s.v0) * v_max * w.ratio)
    return s.l - 2.0 * s.v0 * half - 4.0 / 3.0 * (v_max - s.v0) * half


def classify_free(s: Scenario, w: Weights) -> FreeCase:
    """Pick the shape of the free-arrival optimum.

    Args:
        s: Scenario
        w: Weights with both components positive

    Returns:
        The column together with the threshold speed and both margins
    """
    if w.rho_t <= 0 or w.rho_u <= 0:
        raise ValueError("classify_free needs both weights positive")

    u = s.limits.u_max
    threshold = (1.0 - u * u * w.ratio) * s.limits.v_max
    f_val = cruise_margin(s, w)
    g_val = ramp_cruise_margin(s, w)

    if s.v0 < threshold:
        column = FreeColumn.FULL_RAMP_CRUISE if f_val >= 0 else FreeColumn.FULL_RAMP
    else:
        column = FreeColumn.RAMP_CRUISE if g_val >= 0 else FreeColumn.RAMP_ONLY

    logger.debug(f"Free column {column.value}: threshold={threshold:.6g}, f={f_val:.6g}, g={g_val:.6g}")
    return FreeCase(column=column, threshold=threshold, f_val=f_val, g_val=g_val)


def _ramp_only_distance(s: Scenario, w: Weights, v2: float) -> float:
    return 2.0 / 3.0 * (s.v0 + 2.0 * v2) * math.sqrt(max(v2 - s.v0, 0.0) * v2 * w.ratio)


def solve_v2(s: Scenario, w: Weights) -> float:
    """Terminal speed of the ramp-only optimum.

    Solves ``l = 2/3 (v0 + 2 v2) sqrt((v2 - v0) v2 rho_u / rho_t)`` on
    ``[v0, v_max]``; the left side is strictly increasing there.

    Raises:
        RootBracketError: If ``v_max`` does not bracket the root
    """

    def residual(v2: float) -> float:
        return _ramp_only_distance(s, w, v2) - s.l

    upper = s.limits.v_max
    if residual(upper) < 0:
        raise RootBracketError(f"No ramp-only terminal speed below v_max for l={s.l}")
    v2 = bisect(residual, s.v0, upper, xtol=settings.ROOT_XTOL, maxiter=settings.ROOT_MAXITER)
    return float(v2)


def _full_ramp_speed(s: Scenario, w: Weights) -> float:
    """Speed at which the full-throttle hold hands over to the ramp, for C2."""
    u = s.limits.u_max
    r = w.ratio
    theta = 1.0 - u * u * r
    denominator = 1.0 + 4.0 * u * u * r / theta + 8.0 / 3.0 * u**4 * r * r / theta**2
    return math.sqrt((2.0 * u * s.l + s.v0**2) / denominator)


def _ramp_only_phases(s: Scenario, w: Weights) -> list[Phase]:
    v2 = solve_v2(s, w)
    duration = 2.0 * math.sqrt((v2 - s.v0) * v2 * w.ratio)
    u_start = duration / (2.0 * w.ratio * v2) if duration > 0 else 0.0
    return [Phase.ramp(u_start, duration)]


def free_phases(s: Scenario, w: Weights, case: FreeCase) -> list[Phase]:
    """Control phases of the free optimum for a classified scenario."""
    u = s.limits.u_max
    v_max = s.limits.v_max
    r = w.ratio

    if case.column is FreeColumn.FULL_RAMP_CRUISE:
        return [
            Phase.hold(u, (case.threshold - s.v0) / u),
            Phase.ramp(u, 2.0 * u * v_max * r),
            Phase.hold(0.0, case.f_val / v_max),
        ]

    if case.column is FreeColumn.FULL_RAMP:
        v1 = _full_ramp_speed(s, w)
        if v1 < s.v0:
            # Too short even for a full-throttle start: the ramp starts below u_max
            logger.debug(f"Hand-over speed {v1:.6g} below v0, using ramp-only shape")
            return _ramp_only_phases(s, w)
        theta = 1.0 - u * u * r
        return [
            Phase.hold(u, (v1 - s.v0) / u),
            Phase.ramp(u, 2.0 * u * v1 * r / theta),
        ]

    if case.column is FreeColumn.RAMP_CRUISE:
        half = math.sqrt((v_max - s.v0) * v_max * r)
        duration = 2.0 * half
        u_start = duration / (2.0 * r * v_max)
        return [
            Phase.ramp(u_start, duration),
            Phase.hold(0.0, case.g_val / v_max),
        ]

    return _ramp_only_phases(s, w)


def _corollary_phases(s: Scenario, w: Weights) -> tuple[list[Phase], str]:
    if w.rho_t == 0:
        # energy only: coast
        return [Phase.hold(0.0, s.l / s.v0)], "COAST"

    # time only: full throttle until v_max or the stop line, then cruise
    u = s.limits.u_max
    v_max = s.limits.v_max
    accel_distance = (v_max**2 - s.v0**2) / (2.0 * u)
    if accel_distance >= s.l:
        t_line = (math.sqrt(s.v0**2 + 2.0 * u * s.l) - s.v0) / u
        return [Phase.hold(u, t_line), Phase.hold(0.0, 0.0)], "FULL_THROTTLE"
    return [
        Phase.hold(u, (v_max - s.v0) / u),
        Phase.hold(0.0, (s.l - accel_distance) / v_max),
    ], "FULL_THROTTLE"


def build_solution(s: Scenario, w: Weights, profile: Profile, case: str, speed_bound: float) -> Solution:
    """Attach arrival time, terminal speed, energy and cost to a profile."""
    end = profile_end(profile)
    energy = profile_energy(profile)
    tau = first_time_at_speed(profile, speed_bound)
    return Solution(
        profile=profile,
        t_p=end.t,
        v_tp=end.v,
        tau=end.t if tau is None else tau,
        energy=energy,
        weighted_cost=total_cost(w, s.t0, end.t, energy),
        case=case,
    )


def solve_free(s: Scenario, w: Weights) -> Solution:
    """Solve for the optimal control and arrival time, ignoring the light.

    Args:
        s: Scenario
        w: Weights for the scenario

    Returns:
        The free-arrival optimum. Its control is non-negative and non-increasing.
    """
    start = VehicleState(t=s.t0, x=0.0, v=s.v0)

    if w.rho_t == 0 or w.rho_u == 0:
        phases, tag = _corollary_phases(s, w)
    else:
        case = classify_free(s, w)
        phases = free_phases(s, w, case)
        tag = case.column.value

    solution = build_solution(s, w, Profile(start=start, phases=tuple(phases)), tag, s.limits.v_max)
    logger.debug(f"Free optimum {tag}: t_p={solution.t_p:.6g}, J={solution.energy:.6g}")
    return solution
