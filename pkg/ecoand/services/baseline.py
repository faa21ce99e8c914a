"""Rule-based human-driver baseline and comparison against the planner.

The driver applies full throttle while the light is green and the speed is
below ``v_max``, and holds the current speed while it is red. Reaching the
stop line under red means an instant stop and a wait for the next green.
Braking and restarting are free.
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from ecoand.models.profile import Phase, Profile
from ecoand.models.scenario import LightSchedule, Scenario, VehicleState
from ecoand.models.solution import Comparison, HumanRun
from ecoand.services.planner import plan
from ecoand.solvers.weights import compute_weights, total_cost
from ecoand.utils.kinematics import propagate_hold, trajectory_rows

logger = logging.getLogger(__name__)

# Relative slack when deciding whether a green window still lies ahead
EDGE_TOLERANCE = 1e-12
MAX_EVENTS = 100_000


def _light_ahead(light: LightSchedule, t: float) -> tuple[bool, float]:
    """Whether green lies immediately ahead of ``t`` and when that state ends.

    Green is treated as half-open here, so a driver standing exactly at the end
    of a green window sees red.
    """
    phase = (t - light.offset) % light.period
    edge = EDGE_TOLERANCE * light.period
    if phase >= light.period - edge:
        phase = 0.0
    if phase < light.green_length - edge:
        return True, t + light.green_length - phase
    return False, t + light.period - phase


def _time_to_cover(distance: float, v: float, u: float) -> float:
    if u == 0:
        return distance / v
    return (math.sqrt(v * v + 2.0 * u * distance) - v) / u


def simulate_human(s: Scenario) -> HumanRun:
    """Simulate the rule-based driver with exact event times.

    Args:
        s: Scenario

    Returns:
        HumanRun with the en-route profile, arrival time, energy and cost
    """
    u_max = s.limits.u_max
    v_max = s.limits.v_max
    state = VehicleState(t=s.t0, x=0.0, v=s.v0)
    phases: list[Phase] = []
    energy = 0.0
    waited = False
    t_p: float | None = None

    for _ in range(MAX_EVENTS):
        green, switch_time = _light_ahead(s.light, state.t)
        remaining = s.l - state.x
        accelerating = green and state.v < v_max
        u = u_max if accelerating else 0.0

        event_dt = switch_time - state.t
        if accelerating:
            event_dt = min(event_dt, (v_max - state.v) / u_max)

        line_dt = _time_to_cover(remaining, state.v, u)
        if line_dt <= event_dt:
            phases.append(Phase.hold(u, line_dt))
            state, cost = propagate_hold(state, u, line_dt)
            energy += cost
            if not green and line_dt < event_dt:
                waited = True
                t_p = switch_time
            else:
                t_p = state.t
            break

        phases.append(Phase.hold(u, event_dt))
        state, cost = propagate_hold(state, u, event_dt)
        state = state.model_copy(update={"v": min(state.v, v_max)})
        energy += cost
    else:
        raise RuntimeError(f"Human-driver simulation did not reach the stop line within {MAX_EVENTS} events")
    assert t_p is not None

    w = compute_weights(s.rho, s.limits, s.l)
    profile = Profile(start=VehicleState(t=s.t0, x=0.0, v=s.v0), phases=tuple(phases))
    logger.debug(f"Human driver reaches the line at {state.t:.6g} s, crosses at {t_p:.6g} s, waited={waited}")
    return HumanRun(
        profile=profile,
        stop_time=state.t,
        t_p=t_p,
        energy=energy,
        weighted_cost=total_cost(w, s.t0, t_p, energy),
        waited=waited,
    )


def human_trajectory(run: HumanRun, step: float) -> npt.NDArray[np.float64]:
    """Sample ``(t, x, v, u)`` rows of a human run, including any wait at the line."""
    rows = trajectory_rows(run.profile, step)
    if not run.waited:
        return rows
    wait_times = np.arange(run.stop_time + step, run.t_p, step)
    wait_times = np.append(wait_times, run.t_p)
    wait = np.column_stack(
        [wait_times, np.full_like(wait_times, rows[-1, 1]), np.zeros_like(wait_times), np.zeros_like(wait_times)],
    )
    return np.vstack([rows, wait])


def improvement(hd: float, av: float) -> float:
    """Relative saving of the planner over the human driver, ``(hd - av) / hd``.

    May be negative.
    """
    if hd <= 0:
        raise ValueError(f"Human-driver cost must be positive, got {hd}")
    return (hd - av) / hd


def compare(s: Scenario) -> Comparison:
    """Run the planner and the human driver on the same scenario."""
    outcome = plan(s)
    human = simulate_human(s)
    gain = improvement(human.weighted_cost, outcome.chosen.weighted_cost)
    logger.info(
        f"HD cost {human.weighted_cost:.6g}, AV cost {outcome.chosen.weighted_cost:.6g}, improvement {gain:.2%}",
    )
    return Comparison(human=human, planned=outcome, improvement=gain)
