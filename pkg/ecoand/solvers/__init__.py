from ecoand.solvers.fixed_horizon import (
    earliest_arrival,
    latest_arrival,
    reachability_h,
    solve_accel_cases,
    solve_decel_cases,
    solve_fixed,
)
from ecoand.solvers.free_horizon import classify_free, solve_free, solve_v2
from ecoand.solvers.weights import compute_weights, total_cost

__all__ = [
    "classify_free",
    "compute_weights",
    "earliest_arrival",
    "latest_arrival",
    "reachability_h",
    "solve_accel_cases",
    "solve_decel_cases",
    "solve_fixed",
    "solve_free",
    "solve_v2",
    "total_cost",
]
