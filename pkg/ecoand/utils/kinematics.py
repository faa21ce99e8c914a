"""Closed-form kinematics of hold and ramp-to-zero control phases."""

import numpy as np
import numpy.typing as npt

from ecoand.models.profile import Phase, PhaseKind, Profile
from ecoand.models.scenario import VehicleState

# Sample times this close outside a profile's span are clamped onto it.
SAMPLE_TIME_TOLERANCE = 1e-9


def propagate_hold(state: VehicleState, u: float, dt: float) -> tuple[VehicleState, float]:
    """Propagate a constant control.

    Args:
        state: State at the start of the phase
        u: Constant acceleration
        dt: Phase duration, must be non-negative

    Returns:
        Tuple of the state at the end of the phase and the energy ``u**2 * dt``
    """
    if dt < 0:
        raise ValueError(f"Phase duration must be non-negative, got {dt}")
    end = VehicleState(
        t=state.t + dt,
        x=state.x + state.v * dt + 0.5 * u * dt * dt,
        v=state.v + u * dt,
    )
    return end, u * u * dt


def propagate_ramp(state: VehicleState, u_start: float, dt: float) -> tuple[VehicleState, float]:
    """Propagate a control that decays linearly from ``u_start`` to zero.

    With ``c = u_start / dt`` the phase adds ``c*dt**2/2`` of speed,
    ``v*dt + c*dt**3/3`` of distance and costs ``c**2 * dt**3 / 3``.

    Args:
        state: State at the start of the phase
        u_start: Control at the start of the phase
        dt: Phase duration; zero leaves the state unchanged

    Returns:
        Tuple of the state at the end of the phase and its energy
    """
    if dt < 0:
        raise ValueError(f"Phase duration must be non-negative, got {dt}")
    if dt == 0:
        return state, 0.0
    end = VehicleState(
        t=state.t + dt,
        x=state.x + state.v * dt + u_start * dt * dt / 3.0,
        v=state.v + 0.5 * u_start * dt,
    )
    return end, u_start * u_start * dt / 3.0


def propagate_phase(state: VehicleState, phase: Phase) -> tuple[VehicleState, float]:
    if phase.kind is PhaseKind.HOLD:
        return propagate_hold(state, phase.u, phase.dt)
    return propagate_ramp(state, phase.u, phase.dt)


def phase_states(profile: Profile) -> list[VehicleState]:
    """States at every phase boundary, starting with ``profile.start``."""
    states = [profile.start]
    for phase in profile.phases:
        end, _ = propagate_phase(states[-1], phase)
        states.append(end)
    return states


def profile_end(profile: Profile) -> VehicleState:
    return phase_states(profile)[-1]


def profile_energy(profile: Profile) -> float:
    """Total control energy, the sum of the per-phase closed forms."""
    total = 0.0
    state = profile.start
    for phase in profile.phases:
        state, energy = propagate_phase(state, phase)
        total += energy
    return total


def first_time_at_speed(profile: Profile, speed: float, tolerance: float = 1e-9) -> float | None:
    """Earliest phase boundary at which the speed equals ``speed``.

    Optimal profiles are monotone in speed, so a bound can only be reached at
    the end of a phase.
    """
    for state in phase_states(profile):
        if abs(state.v - speed) <= tolerance:
            return state.t
    return None


def _active_phases(profile: Profile) -> tuple[list[Phase], list[VehicleState]]:
    phases: list[Phase] = []
    starts: list[VehicleState] = []
    state = profile.start
    for phase in profile.phases:
        if phase.dt > 0:
            phases.append(phase)
            starts.append(state)
        state, _ = propagate_phase(state, phase)
    return phases, starts


def _check_span(profile: Profile, t: float) -> float:
    t_end = profile.t_end
    tolerance = SAMPLE_TIME_TOLERANCE * max(1.0, abs(t_end))
    if t < profile.start.t - tolerance or t > t_end + tolerance:
        raise ValueError(f"Sample time {t} outside profile span [{profile.start.t}, {t_end}]")
    return min(max(t, profile.start.t), t_end)


def sample_profile(profile: Profile, t: float) -> tuple[float, float, float]:
    """Evaluate position, speed and control at time ``t``.

    At a phase boundary the control of the phase that starts there is
    reported; at the arrival time the control of the last phase.

    Raises:
        ValueError: If ``t`` lies outside ``[start.t, t_end]``
    """
    t = _check_span(profile, t)
    xs, vs, us = sample_profile_array(profile, np.array([t]))
    return float(xs[0]), float(vs[0]), float(us[0])


def sample_profile_array(
    profile: Profile,
    ts: npt.ArrayLike,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Vectorized ``sample_profile`` over an array of times."""
    times = np.asarray(ts, dtype=float)
    if times.size:
        _check_span(profile, float(times.min()))
        _check_span(profile, float(times.max()))
    times = np.clip(times, profile.start.t, profile.t_end)

    phases, starts = _active_phases(profile)
    if not phases:
        shape = times.shape
        return (
            np.full(shape, profile.start.x),
            np.full(shape, profile.start.v),
            np.zeros(shape),
        )

    begin = np.array([s.t for s in starts])
    idx = np.clip(np.searchsorted(begin, times, side="right") - 1, 0, len(phases) - 1)

    dts = np.array([p.dt for p in phases])
    s = np.clip(times - begin[idx], 0.0, dts[idx])
    x0 = np.array([st.x for st in starts])[idx]
    v0 = np.array([st.v for st in starts])[idx]
    u = np.array([p.u for p in phases])[idx]
    is_ramp = np.array([p.kind is PhaseKind.RAMP_TO_ZERO for p in phases])[idx]

    # hold: constant u; ramp: u(s) = c * (dt - s) with c = -slope
    c = -np.array([p.slope for p in phases])[idx]
    d = dts[idx]
    us = np.where(is_ramp, c * (d - s), u)
    vs = np.where(is_ramp, v0 + c * (d * s - 0.5 * s * s), v0 + u * s)
    xs = np.where(
        is_ramp,
        x0 + v0 * s + c * (0.5 * d * s * s - s**3 / 6.0),
        x0 + v0 * s + 0.5 * u * s * s,
    )
    return xs, vs, us


def trajectory_rows(profile: Profile, step: float) -> npt.NDArray[np.float64]:
    """Sample ``(t, x, v, u)`` rows every ``step`` seconds, arrival time included."""
    if step <= 0:
        raise ValueError(f"Sampling step must be positive, got {step}")
    n = int(np.floor(profile.duration / step + 1e-9))
    ts = profile.start.t + step * np.arange(n + 1)
    if ts[-1] < profile.t_end - SAMPLE_TIME_TOLERANCE:
        ts = np.append(ts, profile.t_end)
    xs, vs, us = sample_profile_array(profile, ts)
    return np.column_stack([ts, xs, vs, us])
