"""Planner service that turns a scenario into a green arrival plan."""

import logging

from ecoand.config.settings import FEASIBILITY_TOLERANCE
from ecoand.exceptions import NoFeasiblePlanError, TooLateError, UnreachableError
from ecoand.models.profile import Profile
from ecoand.models.scenario import Scenario, is_green, red_window_bounds, validate_scenario
from ecoand.models.solution import Candidate, PlanBranch, PlanOutcome, Solution, Weights
from ecoand.solvers.fixed_horizon import latest_arrival, solve_fixed
from ecoand.solvers.free_horizon import solve_free
from ecoand.solvers.weights import compute_weights, total_cost
from ecoand.utils.kinematics import sample_profile

# Configure logging
logger = logging.getLogger(__name__)

__all__ = ["plan", "scenario_at", "total_cost"]


def _evaluate(s: Scenario, w: Weights, branch: PlanBranch, t_p: float) -> tuple[Candidate, Solution | None]:
    try:
        solution = solve_fixed(s, w, t_p)
    except (UnreachableError, TooLateError) as e:
        logger.info(f"Candidate {branch.value} at {t_p:.6g} s is infeasible: {e}")
        return Candidate(branch=branch, t_p=t_p, weighted_cost=None, reason=str(e)), None
    candidate = Candidate(branch=branch, t_p=t_p, weighted_cost=solution.weighted_cost, case=solution.case)
    return candidate, solution


def plan(s: Scenario, weights: Weights | None = None) -> PlanOutcome:
    """Compute the optimal green arrival.

    Solves the free-arrival problem first. If that arrival falls into a red
    phase, the two green instants around it are tried as fixed arrival times
    and the cheaper one is kept.

    Args:
        s: Scenario to plan
        weights: Optional pre-computed weights. Re-planning from a state along
            an earlier plan should pass that plan's weights.

    Returns:
        PlanOutcome with the chosen solution and every candidate considered

    Raises:
        NoFeasiblePlanError: If no green instant around the free arrival is reachable
    """
    validate_scenario(s)
    w = weights if weights is not None else compute_weights(s.rho, s.limits, s.l)

    # Step 1: Solve without the light
    free = solve_free(s, w)

    # Step 2: Keep it if it arrives under green
    if is_green(s.light, free.t_p):
        logger.info(f"Free arrival at {free.t_p:.6g} s is green")
        candidate = Candidate(
            branch=PlanBranch.FREE_GREEN, t_p=free.t_p, weighted_cost=free.weighted_cost, case=free.case
        )
        return PlanOutcome(branch=PlanBranch.FREE_GREEN, chosen=free, candidates=[candidate], free=free, weights=w)

    # Step 3: Repair against the green instants around the red arrival
    window = red_window_bounds(s.light, free.t_p)
    assert window is not None
    # Before the first cycle the previous green end is the periodic one
    prev_end = window.prev_green_end
    if prev_end is None:
        prev_end = window.next_green_start - s.light.period + s.light.green_length
    logger.info(f"Free arrival at {free.t_p:.6g} s is red; trying {prev_end:.6g} and {window.next_green_start:.6g}")

    evaluated: list[tuple[Candidate, Solution | None]] = []
    if prev_end - s.t0 > FEASIBILITY_TOLERANCE * s.light.period:
        evaluated.append(_evaluate(s, w, PlanBranch.PREV_GREEN_END, prev_end))
    # Only the first green start after the free arrival is tried
    evaluated.append(_evaluate(s, w, PlanBranch.NEXT_GREEN_START, window.next_green_start))

    feasible: list[tuple[Candidate, Solution]] = [(c, sol) for c, sol in evaluated if sol is not None]
    if not feasible:
        raise NoFeasiblePlanError(
            f"No green arrival reachable: free arrival {free.t_p:.6g} s is red and the latest possible "
            f"arrival is {latest_arrival(s):.6g} s",
        )

    # Step 4: Cheaper candidate wins, earlier arrival on ties
    candidate, chosen = min(feasible, key=lambda item: (item[1].weighted_cost, item[1].t_p))
    logger.info(f"Chose {candidate.branch.value} at {chosen.t_p:.6g} s (case {chosen.case})")
    return PlanOutcome(
        branch=candidate.branch,
        chosen=chosen,
        candidates=[c for c, _ in evaluated],
        free=free,
        weights=w,
    )


def scenario_at(s: Scenario, profile: Profile, t: float) -> Scenario:
    """Re-planning scenario from the state reached at ``t`` along ``profile``.

    Args:
        s: Scenario the profile was planned for
        profile: Planned profile
        t: Time along the profile, before the arrival

    Returns:
        Scenario starting at ``t`` with the remaining distance to the stop line
    """
    x, v, _ = sample_profile(profile, t)
    remaining = s.l - x
    if remaining <= FEASIBILITY_TOLERANCE * s.l:
        raise ValueError(f"Stop line already reached at t={t}")
    v = min(max(v, s.limits.v_min), s.limits.v_max)
    return s.model_copy(update={"t0": t, "v0": v, "l": remaining})
