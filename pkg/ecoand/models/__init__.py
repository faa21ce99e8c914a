# This file initializes the models module.
from ecoand.models.profile import Phase, PhaseKind, Profile
from ecoand.models.scenario import (
    LightSchedule,
    Limits,
    RedWindow,
    Scenario,
    VehicleState,
    build_scenario,
    is_green,
    red_window_bounds,
    validate_scenario,
)
from ecoand.models.solution import (
    Candidate,
    Comparison,
    FixedCase,
    FixedCaseId,
    FreeCase,
    FreeColumn,
    HumanRun,
    PlanBranch,
    PlanOutcome,
    Solution,
    Weights,
)

__all__ = [
    # Scenario types
    "Limits",
    "LightSchedule",
    "Scenario",
    "VehicleState",
    "RedWindow",
    "build_scenario",
    "is_green",
    "red_window_bounds",
    "validate_scenario",
    # Profiles
    "Phase",
    "PhaseKind",
    "Profile",
    # Results
    "Weights",
    "FreeCase",
    "FreeColumn",
    "FixedCase",
    "FixedCaseId",
    "Solution",
    "Candidate",
    "PlanBranch",
    "PlanOutcome",
    "HumanRun",
    "Comparison",
]
