"""Objective weight normalization."""

import math

from ecoand.models.scenario import Limits
from ecoand.models.solution import Weights


def long_road_threshold(limits: Limits) -> float:
    """Road length from which full throttle starting at ``v_min`` reaches ``v_max``."""
    span = limits.v_max - limits.v_min
    return limits.v_min * span / limits.u_max + 0.5 * span * span / limits.u_max


def compute_weights(rho: float, limits: Limits, l: float) -> Weights:  # noqa: E741
    """Normalize the trade-off ``rho`` into time and energy weights.

    The time weight scales travel time by the slowest crossing ``l / v_min``.
    The energy weight scales by the energy of a full-throttle run, capped at
    ``v_max`` on long roads.

    Args:
        rho: Trade-off in [0, 1]; 1 minimizes travel time only, 0 energy only
        limits: Vehicle limits
        l: Distance to the stop line

    Returns:
        Weights for the scenario
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0,1], got {rho}")
    if l <= 0:
        raise ValueError(f"l must be positive, got {l}")

    rho_t = rho * limits.v_min / l
    if l >= long_road_threshold(limits):
        speed_gain = limits.v_max - limits.v_min
    else:
        speed_gain = math.sqrt(limits.v_min**2 + 2.0 * limits.u_max * l) - limits.v_min
    rho_u = (1.0 - rho) / (speed_gain * limits.u_max)
    return Weights(rho_t=rho_t, rho_u=rho_u)


def total_cost(w: Weights, t0: float, t_p: float, energy: float) -> float:
    """Weighted cost ``rho_t * (t_p - t0) + rho_u * energy``."""
    if t_p < t0:
        raise ValueError(f"Arrival time {t_p} precedes start time {t0}")
    if energy < 0:
        raise ValueError(f"Energy must be non-negative, got {energy}")
    return w.rho_t * (t_p - t0) + w.rho_u * energy
