"""Global configuration settings for the ecoand application.

This module contains numeric defaults shared across the solvers, the oracle
and the CLI.
"""

# Vehicle limits used in the reference scenarios (m/s and m/s^2)
DEFAULT_LIMITS = {
    "v_min": 2.78,
    "v_max": 22.22,
    "u_min": -2.9,
    "u_max": 2.5,
}

# Trade-off weight used by the reference scenarios
DEFAULT_RHO = 0.9549

# Tolerance on closed-form case assumptions
FEASIBILITY_TOLERANCE = 1e-9

# Bisection settings for the ramp-only terminal speed
ROOT_XTOL = 1e-12
ROOT_MAXITER = 200

# Output
DEFAULT_TRAJECTORY_STEP = 0.01
CSV_FLOAT_FORMAT = "%.9g"

# Oracle acceptance
ORACLE_REL_TOLERANCE = 0.02
ORACLE_ABS_TOLERANCE = 0.05
ORACLE_SLACK_CONSTANT = 1.0
DEFAULT_GRID = "desk"

# Lagrange multiplier search in the oracle
ORACLE_LAMBDA_START = 0.1
ORACLE_LAMBDA_WARM_WIDTH = 0.1  # first bracket step as a fraction of a warm-start multiplier
ORACLE_LAMBDA_MAX_DOUBLINGS = 60
ORACLE_MULTIPLIER_STEPS = 16
ORACLE_LAMBDA_MIN_WIDTH = 1e-4  # relative bracket width at which the search stops
ORACLE_MISS_FRACTION = 0.05  # target terminal miss as a fraction of dx
