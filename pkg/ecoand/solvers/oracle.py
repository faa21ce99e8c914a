"""Dynamic-programming oracle for the closed-form solvers.

The oracle shares no closed-form code with the analytical solvers. It
discretizes time into steps of length ``dt`` with piecewise-constant control
taken from ``control_levels`` values spanning ``[u_min, u_max]`` (0 and both
bounds always included). It runs value iteration on a speed grid of spacing
``dv``, interpolating the value function between speed nodes.

The distance constraint ``x(t_p) = l`` is enforced through a Lagrange
multiplier ``lam``. For a fixed ``lam`` the program minimizes
``sum(u**2 * dt) - lam * x(t_p)``, which needs no position state. ``lam`` is
then adjusted until the forward-simulated trajectory ends at the stop line.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from ecoand.config import settings
from ecoand.config.config_models import GridSpec
from ecoand.exceptions import OracleInfeasibleError
from ecoand.models.scenario import LightSchedule, Limits, Scenario
from ecoand.models.solution import Weights
from ecoand.services.planner import plan
from ecoand.solvers.fixed_horizon import earliest_arrival, latest_arrival

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DPTrajectory:
    times: npt.NDArray[np.float64]
    positions: npt.NDArray[np.float64]
    speeds: npt.NDArray[np.float64]
    controls: npt.NDArray[np.float64]


@dataclass(frozen=True)
class DPResult:
    """Fixed-arrival oracle result.

    ``energy`` is the trajectory energy corrected to first order for the
    residual terminal miss, ``raw_energy`` the energy of the trajectory itself.
    """

    energy: float
    raw_energy: float
    distance: float
    multiplier: float
    trajectory: DPTrajectory


@dataclass(frozen=True)
class DPFreeResult:
    weighted_cost: float
    t_p: float
    energy: float
    steps: int


@dataclass(frozen=True)
class CrosscheckReport:
    label: str
    t_p: float
    analytical_energy: float
    dp_energy: float
    abs_gap: float
    rel_gap: float
    slack: float
    within_gap: bool
    lower_bound_ok: bool

    @property
    def passed(self) -> bool:
        return self.within_gap and self.lower_bound_ok


class SpeedGridProgram:
    """Value iteration over a uniform speed grid for one horizon."""

    def __init__(
        self,
        limits: Limits,
        v0: float,
        horizon: float,
        grid: GridSpec,
        controls: npt.NDArray[np.float64] | None = None,
    ):
        if horizon <= 0:
            raise ValueError(f"Horizon must be positive, got {horizon}")
        self.limits = limits
        self.v0 = v0
        self.n_steps = max(1, round(horizon / grid.dt))
        self.step = horizon / self.n_steps

        span = limits.v_max - limits.v_min
        n_nodes = max(2, math.ceil(span / grid.dv) + 1)
        self.speeds = np.linspace(limits.v_min, limits.v_max, n_nodes)
        self.spacing = span / (n_nodes - 1)
        if controls is None:
            controls = control_levels(limits.u_min, limits.u_max, grid.control_levels)
        self.controls = controls

        next_speeds = self.speeds[:, None] + self.controls[None, :] * self.step
        self.valid = (next_speeds >= limits.v_min - 1e-12) & (next_speeds <= limits.v_max + 1e-12)
        clipped = np.clip(next_speeds, limits.v_min, limits.v_max)
        position = (clipped - limits.v_min) / self.spacing
        self.lower = np.clip(np.floor(position).astype(np.int64), 0, n_nodes - 2)
        self.fraction = position - self.lower
        self.stage_energy = np.broadcast_to(self.controls**2 * self.step, next_speeds.shape)
        self.stage_distance = 0.5 * (self.speeds[:, None] + clipped) * self.step

    def _values(self, lam: float) -> npt.NDArray[np.float64]:
        stage = np.where(self.valid, self.stage_energy - lam * self.stage_distance, np.inf)
        values = np.empty((self.n_steps + 1, self.speeds.size))
        values[-1] = 0.0
        upper = self.lower + 1
        keep = 1.0 - self.fraction
        low_part = np.empty(stage.shape)
        high_part = np.empty(stage.shape)
        for k in range(self.n_steps - 1, -1, -1):
            following = values[k + 1]
            np.multiply(following[self.lower], keep, out=low_part)
            np.multiply(following[upper], self.fraction, out=high_part)
            low_part += high_part
            low_part += stage
            np.min(low_part, axis=1, out=values[k])
        return values

    def run(self, lam: float, t0: float = 0.0) -> DPTrajectory:
        """Optimal trajectory from ``v0`` for multiplier ``lam``."""
        values = self._values(lam)
        v_min, v_max = self.limits.v_min, self.limits.v_max
        speeds = np.empty(self.n_steps + 1)
        positions = np.empty(self.n_steps + 1)
        controls = np.empty(self.n_steps)
        speeds[0], positions[0] = self.v0, 0.0

        for k in range(self.n_steps):
            v = speeds[k]
            candidates = v + self.controls * self.step
            allowed = (candidates >= v_min - 1e-12) & (candidates <= v_max + 1e-12)
            candidates = np.clip(candidates, v_min, v_max)
            q = (
                self.controls**2 * self.step
                - lam * 0.5 * (v + candidates) * self.step
                + np.interp(candidates, self.speeds, values[k + 1])
            )
            j = int(np.argmin(np.where(allowed, q, np.inf)))
            controls[k] = (candidates[j] - v) / self.step
            speeds[k + 1] = candidates[j]
            positions[k + 1] = positions[k] + 0.5 * (v + candidates[j]) * self.step

        times = t0 + self.step * np.arange(self.n_steps + 1)
        return DPTrajectory(times=times, positions=positions, speeds=speeds, controls=controls)


def control_levels(low: float, high: float, count: int) -> npt.NDArray[np.float64]:
    """``count`` evenly spaced controls on ``[low, high]``, plus zero when it lies inside."""
    levels = np.linspace(low, high, count)
    if low <= 0.0 <= high:
        levels = np.concatenate([levels, [0.0]])
    return np.unique(levels)


def _energy(trajectory: DPTrajectory, step: float) -> float:
    return float(np.sum(trajectory.controls**2) * step)


def _search_multiplier(
    program: SpeedGridProgram,
    s: Scenario,
    t_p: float,
    tolerance: float,
    start: float = 0.0,
) -> DPResult:
    """Adjust the multiplier until the trajectory ends within ``tolerance`` of the stop line."""

    def attempt(lam: float) -> tuple[float, DPTrajectory]:
        trajectory = program.run(lam, s.t0)
        return float(trajectory.positions[-1]) - s.l, trajectory

    miss, best = attempt(start)
    best_lam, best_miss = start, miss
    attempts = 1
    if abs(miss) > tolerance:
        # Bracket the multiplier outward from the start, then refine it by regula falsi (Illinois variant)
        sign = 1.0 if miss < 0 else -1.0
        width = settings.ORACLE_LAMBDA_START
        if abs(start) > settings.ORACLE_LAMBDA_START:
            width = settings.ORACLE_LAMBDA_WARM_WIDTH * abs(start)
        a, fa = start, miss
        b = start + sign * width
        for _ in range(settings.ORACLE_LAMBDA_MAX_DOUBLINGS):
            fb, trajectory = attempt(b)
            attempts += 1
            if abs(fb) < abs(best_miss):
                best, best_lam, best_miss = trajectory, b, fb
            if sign * fb >= 0:
                break
            width *= 2.0
            a, fa, b = b, fb, b + sign * width
        else:
            raise OracleInfeasibleError(f"Grid cannot reach l={s.l} at t_p={t_p}")

        for _ in range(settings.ORACLE_MULTIPLIER_STEPS):
            # miss(lam) is piecewise constant on the grid
            narrow = abs(b - a) <= settings.ORACLE_LAMBDA_MIN_WIDTH * max(abs(a), abs(b))
            if abs(best_miss) <= tolerance or fb == fa or narrow:
                break
            c = b - fb * (b - a) / (fb - fa)
            if not min(a, b) < c < max(a, b):
                c = 0.5 * (a + b)
            fc, trajectory = attempt(c)
            attempts += 1
            if abs(fc) < abs(best_miss):
                best, best_lam, best_miss = trajectory, c, fc
            if fc * fb < 0:
                a, fa = b, fb
            else:
                fa *= 0.5
            b, fb = c, fc

    logger.debug(f"Multiplier search at t_p={t_p:.6g}: {attempts} attempts, lam={best_lam:.6g}, miss={best_miss:.3g}")
    raw = _energy(best, program.step)
    return DPResult(
        energy=max(raw - best_lam * best_miss, 0.0),
        raw_energy=raw,
        distance=float(best.positions[-1]),
        multiplier=best_lam,
        trajectory=best,
    )


def dp_solve_fixed(s: Scenario, t_p: float, g: GridSpec) -> DPResult:
    """Minimum energy to reach the stop line at ``t_p`` on the grid.

    With ``g.refine`` the search is repeated on ``control_levels`` values
    spanning only the controls of the first pass (widened by two level
    spacings), which resolves small accelerations the full set cannot. The
    first pass then only needs to land within ``dx``, and the second starts
    from its multiplier.

    Args:
        s: Scenario (the light is ignored)
        t_p: Arrival time
        g: Grid resolution

    Returns:
        DPResult with the energy and the discrete trajectory

    Raises:
        OracleInfeasibleError: If no multiplier brings the trajectory within ``dx`` of the stop line
    """
    horizon = t_p - s.t0
    target = settings.ORACLE_MISS_FRACTION * g.dx
    first_tolerance = g.dx if g.refine else target
    result = _search_multiplier(SpeedGridProgram(s.limits, s.v0, horizon, g), s, t_p, first_tolerance)

    if g.refine:
        used = result.trajectory.controls
        margin = 2.0 * (s.limits.u_max - s.limits.u_min) / (g.control_levels - 1)
        low = max(s.limits.u_min, float(used.min()) - margin)
        high = min(s.limits.u_max, float(used.max()) + margin)
        zoomed = SpeedGridProgram(s.limits, s.v0, horizon, g, control_levels(low, high, g.control_levels))
        try:
            refined = _search_multiplier(zoomed, s, t_p, target, start=result.multiplier)
        except OracleInfeasibleError:
            logger.debug(f"Refined control set cannot reach the stop line at t_p={t_p:.6g}")
        else:
            if abs(refined.distance - s.l) <= g.dx and refined.energy < result.energy:
                result = refined

    miss = result.distance - s.l
    if abs(miss) > g.dx:
        raise OracleInfeasibleError(
            f"Oracle trajectory misses the stop line by {miss:.3g} m at t_p={t_p:.6g} (dx={g.dx})",
        )
    logger.debug(f"Oracle at t_p={t_p:.6g}: lam={result.multiplier:.6g}, miss={miss:.3g}, J={result.energy:.6g}")
    return result


def dp_solve_free(s: Scenario, w: Weights, g: GridSpec, horizon: float | None = None) -> DPFreeResult:
    """Best weighted cost over all grid arrival steps, ignoring the light.

    Args:
        s: Scenario
        w: Weights
        g: Grid resolution
        horizon: Longest travel time searched; defaults to the latest possible arrival

    Returns:
        DPFreeResult with the best arrival time and its cost
    """
    if horizon is None:
        horizon = latest_arrival(s) - s.t0
    low = max(1, math.ceil((earliest_arrival(s) - s.t0) / g.dt - 1e-9))
    high = math.floor(horizon / g.dt + 1e-9)
    if high < low:
        raise OracleInfeasibleError(f"Horizon {horizon} s is shorter than the earliest arrival")

    cache: dict[int, tuple[float, float]] = {}

    def cost(n: int) -> float:
        if n not in cache:
            try:
                energy = dp_solve_fixed(s, s.t0 + n * g.dt, g).energy
            except OracleInfeasibleError:
                cache[n] = (math.inf, math.inf)
            else:
                cache[n] = (w.rho_t * n * g.dt + w.rho_u * energy, energy)
        return cache[n][0]

    # Golden-section search over integer step counts, then a local scan
    lo, hi = low, high
    while hi - lo > 3:
        m1 = lo + round(0.382 * (hi - lo))
        m2 = max(m1 + 1, lo + round(0.618 * (hi - lo)))
        if cost(m1) <= cost(m2):
            hi = m2
        else:
            lo = m1
    scan = range(max(low, lo - 2), min(high, hi + 2) + 1)
    best = min(scan, key=lambda n: (cost(n), n))
    if math.isinf(cost(best)):
        raise OracleInfeasibleError("No grid arrival step reaches the stop line")

    logger.info(f"Oracle free arrival after {best} steps: cost {cache[best][0]:.6g}")
    return DPFreeResult(
        weighted_cost=cache[best][0],
        t_p=s.t0 + best * g.dt,
        energy=cache[best][1],
        steps=best,
    )


def compare_energies(
    analytical: float,
    dp_energy: float,
    g: GridSpec,
    t_p: float = math.nan,
    label: str = "",
) -> CrosscheckReport:
    """Judge an analytical energy against the oracle's.

    The gap passes when within the larger of the relative and absolute
    tolerances. The analytical optimum must also not exceed the oracle value
    by more than the grid slack ``C * (dt + dv)``.
    """
    abs_gap = abs(dp_energy - analytical)
    rel_gap = abs_gap / abs(analytical) if analytical != 0 else (0.0 if abs_gap == 0 else math.inf)
    slack = settings.ORACLE_SLACK_CONSTANT * (g.dt + g.dv)
    allowed = max(settings.ORACLE_REL_TOLERANCE * abs(analytical), settings.ORACLE_ABS_TOLERANCE)
    return CrosscheckReport(
        label=label,
        t_p=t_p,
        analytical_energy=analytical,
        dp_energy=dp_energy,
        abs_gap=abs_gap,
        rel_gap=rel_gap,
        slack=slack,
        within_gap=abs_gap <= allowed,
        lower_bound_ok=dp_energy + slack >= analytical,
    )


def crosscheck(s: Scenario, g: GridSpec, label: str = "") -> CrosscheckReport:
    """Plan the scenario and compare the chosen energy against the oracle at the same arrival."""
    outcome = plan(s)
    t_p = outcome.chosen.t_p
    dp = dp_solve_fixed(s, t_p, g)
    report = compare_energies(outcome.chosen.energy, dp.energy, g, t_p=t_p, label=label)
    if not report.passed:
        logger.warning(
            f"Oracle gap for {label or 'scenario'}: analytical {report.analytical_energy:.6g}, "
            f"DP {report.dp_energy:.6g}",
        )
    return report


def random_scenarios(
    n: int,
    seed: int,
    limits: Limits | None = None,
    rho: float = settings.DEFAULT_RHO,
) -> list[Scenario]:
    """Draw reproducible scenarios for batch verification."""
    rng = np.random.default_rng(seed)
    limits = limits or Limits(**settings.DEFAULT_LIMITS)
    scenarios = []
    for _ in range(n):
        scenarios.append(
            Scenario(
                v0=float(rng.uniform(limits.v_min, limits.v_max)),
                l=float(rng.uniform(100.0, 2500.0)),
                limits=limits,
                rho=rho,
                light=LightSchedule(
                    period=60.0,
                    duty=float(rng.uniform(0.3, 0.7)),
                    offset=float(rng.uniform(0.0, 60.0)),
                ),
            ),
        )
    return scenarios
