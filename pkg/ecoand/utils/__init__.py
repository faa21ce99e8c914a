"""Utility modules for ecoand."""

# Import and expose functions from csv_utils
from ecoand.utils.csv_utils import (
    SWEEP_COLUMNS,
    TRAJECTORY_COLUMNS,
    format_csv,
    write_csv,
)

# Import and expose functions from kinematics
from ecoand.utils.kinematics import (
    profile_end,
    profile_energy,
    propagate_hold,
    propagate_ramp,
    sample_profile,
    sample_profile_array,
    trajectory_rows,
)

__all__ = [
    # CSV utilities
    "SWEEP_COLUMNS",
    "TRAJECTORY_COLUMNS",
    "format_csv",
    "write_csv",
    # Kinematics
    "profile_end",
    "profile_energy",
    "propagate_hold",
    "propagate_ramp",
    "sample_profile",
    "sample_profile_array",
    "trajectory_rows",
]
