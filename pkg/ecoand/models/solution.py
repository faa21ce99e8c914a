"""Result types produced by the solvers, the planner and the baseline."""

from enum import Enum

from pydantic import BaseModel, ConfigDict

from ecoand.models.profile import Profile


class Weights(BaseModel):
    """Normalized objective weights.

    The weighted cost of an arrival is ``rho_t * (t_p - t0) + rho_u * J``
    where ``J`` is the integral of the squared control.
    """

    model_config = ConfigDict(frozen=True)

    rho_t: float
    rho_u: float

    @property
    def ratio(self) -> float:
        """Energy-to-time weight ratio ``rho_u / rho_t``."""
        return self.rho_u / self.rho_t


class FreeColumn(str, Enum):
    """Shape of the free-arrival optimum."""

    FULL_RAMP_CRUISE = "C1"
    FULL_RAMP = "C2"
    RAMP_CRUISE = "C3"
    RAMP_ONLY = "C4"


class FreeCase(BaseModel):
    model_config = ConfigDict(frozen=True)

    column: FreeColumn
    threshold: float
    f_val: float
    g_val: float


class FixedCaseId(str, Enum):
    """Shapes of the fixed-arrival optimum.

    I-V accelerate, VI cruises, VII-X decelerate.
    """

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"


class FixedCase(BaseModel):
    """One feasible fixed-arrival candidate with its closed-form energy."""

    model_config = ConfigDict(frozen=True)

    case_id: FixedCaseId
    energy: float
    profile: Profile
    params: dict[str, float]


class Solution(BaseModel):
    """An arrival plan: control profile plus its arrival figures.

    ``tau`` is the first instant the active speed bound is reached (``v_max``
    for accelerating plans, ``v_min`` for decelerating ones), or ``t_p`` when
    the bound is never touched.
    """

    model_config = ConfigDict(frozen=True)

    profile: Profile
    t_p: float
    v_tp: float
    tau: float
    energy: float
    weighted_cost: float
    case: str


class PlanBranch(str, Enum):
    FREE_GREEN = "FreeGreen"
    PREV_GREEN_END = "PrevGreenEnd"
    NEXT_GREEN_START = "NextGreenStart"


class Candidate(BaseModel):
    """A candidate arrival time considered by the planner.

    ``weighted_cost`` is None when the candidate is infeasible, in which case
    ``reason`` says why.
    """

    model_config = ConfigDict(frozen=True)

    branch: PlanBranch
    t_p: float
    weighted_cost: float | None
    case: str | None = None
    reason: str | None = None

    @property
    def feasible(self) -> bool:
        return self.weighted_cost is not None


class PlanOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    branch: PlanBranch
    chosen: Solution
    candidates: list[Candidate]
    free: Solution
    weights: Weights


class HumanRun(BaseModel):
    """Result of the rule-based human-driver simulation.

    ``profile`` covers the approach up to the stop line, reached at
    ``stop_time``. When the line is reached under red the driver stops and
    waits until ``t_p``, the next green start.
    """

    model_config = ConfigDict(frozen=True)

    profile: Profile
    stop_time: float
    t_p: float
    energy: float
    weighted_cost: float
    waited: bool


class Comparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    human: HumanRun
    planned: PlanOutcome
    improvement: float
