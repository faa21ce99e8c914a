"""Tests for the dynamic-programming oracle."""

import time
from unittest.mock import patch

import numpy as np
import pytest

from ecoand.config import settings
from ecoand.config.config_models import GridSpec
from ecoand.exceptions import NoFeasiblePlanError, OracleInfeasibleError
from ecoand.fixtures import list_fixtures, load_fixture
from ecoand.solvers import oracle
from ecoand.solvers.fixed_horizon import solve_fixed
from ecoand.solvers.free_horizon import solve_free
from ecoand.solvers.oracle import (
    SpeedGridProgram,
    compare_energies,
    control_levels,
    crosscheck,
    dp_solve_fixed,
    dp_solve_free,
    random_scenarios,
)
from ecoand.solvers.weights import compute_weights

DESK = GridSpec(dt=0.05, dv=0.02, dx=0.25, control_levels=59)
LONG_STEP = GridSpec(dt=0.2, dv=0.02, dx=0.25, control_levels=59)
QUICK = GridSpec(dt=0.1, dv=0.05, dx=0.5, control_levels=31, refine=False)


def weights_for(s):
    return compute_weights(s.rho, s.limits, s.l)


class TestControlLevels:
    """Tests for the control set."""

    def test_bounds_and_zero_included(self):
        """Test that both bounds and zero are exact levels."""
        levels = control_levels(-2.9, 2.5, 59)

        assert levels[0] == -2.9
        assert levels[-1] == 2.5
        assert 0.0 in levels
        assert np.all(np.diff(levels) > 0)

    def test_zero_not_added_outside_range(self):
        """Test that a one-sided range keeps its own levels only."""
        levels = control_levels(0.1, 0.5, 5)

        assert len(levels) == 5
        assert 0.0 not in levels

    def test_program_rejects_empty_horizon(self, limits):
        """Test that the horizon must be positive."""
        with pytest.raises(ValueError):
            SpeedGridProgram(limits, 10.0, 0.0, QUICK)


class TestDpSolveFixed:
    """Tests for dp_solve_fixed."""

    @pytest.fixture(scope="class")
    def braking_result(self):
        """Fixture providing the oracle run for the braking repair at 20 s."""
        return dp_solve_fixed(load_fixture("fig3"), 20.0, DESK)

    def test_cruise_needs_no_energy(self, scenario_factory):
        """Test that the oracle cruises when the average speed is v0."""
        s = scenario_factory(v0=10.0, l=200.0)

        result = dp_solve_fixed(s, 20.0, GridSpec(dt=0.1, dv=0.05, dx=0.5, control_levels=31))

        assert result.energy <= 1e-6
        assert result.distance == pytest.approx(200.0)

    def test_braking_repair_matches_closed_form(self, braking_result):
        """Test the oracle against the closed-form braking ramp."""
        assert braking_result.energy == pytest.approx(20.111, rel=0.02)
        assert abs(braking_result.distance - 200.0) <= DESK.dx

    def test_trajectory_respects_bounds(self, braking_result, limits):
        """Test that the discrete trajectory stays within the limits."""
        trajectory = braking_result.trajectory

        assert trajectory.times[-1] == pytest.approx(20.0)
        assert trajectory.speeds.min() >= limits.v_min - 1e-9
        assert trajectory.speeds.max() <= limits.v_max + 1e-9
        assert trajectory.controls.min() >= limits.u_min - 1e-9
        assert trajectory.controls.max() <= limits.u_max + 1e-9

    def test_oracle_does_not_undercut_closed_form(self, braking_result):
        """Test the one-sided bound with the grid slack."""
        analytical = solve_fixed(load_fixture("fig3"), weights_for(load_fixture("fig3")), 20.0).energy

        assert braking_result.energy + (DESK.dt + DESK.dv) >= analytical

    def test_gentle_acceleration_repair(self):
        """Test the small-control ramp that waits for green at 40 s."""
        result = dp_solve_fixed(load_fixture("fig4"), 40.0, LONG_STEP)

        assert result.energy == pytest.approx(0.0407, abs=0.01)

    def test_finer_controls_lower_the_energy(self):
        """Test that richer control sets approach the closed-form energy from above."""
        s = load_fixture("fig4")
        coarse = dp_solve_fixed(s, 40.0, LONG_STEP.model_copy(update={"control_levels": 31, "refine": False}))
        medium = dp_solve_fixed(s, 40.0, LONG_STEP.model_copy(update={"refine": False}))
        refined = dp_solve_fixed(s, 40.0, LONG_STEP)

        assert coarse.energy >= medium.energy - 1e-3
        assert medium.energy >= refined.energy - 1e-3
        assert abs(refined.energy - 0.0407) < abs(coarse.energy - 0.0407)

    def test_unreachable_arrival(self):
        """Test that an arrival before full throttle allows is infeasible on the grid."""
        with pytest.raises(OracleInfeasibleError):
            dp_solve_fixed(load_fixture("fig4"), 10.0, QUICK)

    def test_terminal_miss_beyond_dx_is_infeasible(self):
        """Test that a trajectory ending farther than dx from the line is rejected."""
        with (
            patch("ecoand.solvers.oracle.settings.ORACLE_MULTIPLIER_STEPS", 0),
            patch("ecoand.solvers.oracle.settings.ORACLE_LAMBDA_START", 1000.0),
        ):
            with pytest.raises(OracleInfeasibleError, match="misses the stop line"):
                dp_solve_fixed(load_fixture("fig3"), 20.0, QUICK)

    def test_multiplier_search_is_bounded(self):
        """Test that both passes together stay within the multiplier step budget."""
        values = SpeedGridProgram._values
        with patch.object(SpeedGridProgram, "_values", autospec=True, side_effect=values) as mock_values:
            result = dp_solve_fixed(load_fixture("fig3"), 20.0, LONG_STEP)

        assert abs(result.distance - 200.0) <= LONG_STEP.dx
        assert mock_values.call_count <= 2 * (settings.ORACLE_MULTIPLIER_STEPS + 8)

    def test_refine_starts_from_first_multiplier(self):
        """Test that the refined search starts at the multiplier of the first pass."""
        starts = []
        search = oracle._search_multiplier

        def record(program, s, t_p, tolerance, start=0.0):
            starts.append(start)
            return search(program, s, t_p, tolerance, start=start)

        with patch("ecoand.solvers.oracle._search_multiplier", side_effect=record):
            result = dp_solve_fixed(load_fixture("fig3"), 20.0, LONG_STEP)

        assert len(starts) == 2
        assert starts[0] == 0.0
        assert starts[1] != 0.0
        assert abs(result.distance - 200.0) <= LONG_STEP.dx


class TestDpSolveFree:
    """Tests for dp_solve_free."""

    def test_low_speed_free_arrival(self):
        """Test the free optimum from low speed, ignoring the light."""
        s = load_fixture("fig4")
        w = weights_for(s)

        result = dp_solve_free(s, w, QUICK, horizon=16.0)

        assert result.t_p == pytest.approx(12.186, abs=0.2)
        assert result.weighted_cost == pytest.approx(solve_free(s, w).weighted_cost, rel=0.02)

    def test_high_speed_free_arrival(self):
        """Test the free optimum from high speed."""
        s = load_fixture("fig2")
        w = weights_for(s)

        result = dp_solve_free(s, w, QUICK, horizon=12.0)

        assert result.weighted_cost == pytest.approx(0.126255, rel=0.02)
        assert result.steps == round((result.t_p - s.t0) / QUICK.dt)

    def test_energy_only_coasts(self, scenario_factory):
        """Test that rho=0 finds a near-free coast."""
        s = scenario_factory(v0=10.0, l=200.0, rho=0.0)

        result = dp_solve_free(s, weights_for(s), QUICK, horizon=25.0)

        assert result.weighted_cost <= 1e-3

    def test_horizon_before_earliest_arrival(self):
        """Test that a horizon too short for any arrival raises."""
        s = load_fixture("fig4")

        with pytest.raises(OracleInfeasibleError):
            dp_solve_free(s, weights_for(s), QUICK, horizon=5.0)


class TestCompareEnergies:
    """Tests for the acceptance rule."""

    def test_close_energies_pass(self):
        """Test a gap inside the relative tolerance."""
        report = compare_energies(20.111, 20.2, DESK)

        assert report.within_gap
        assert report.lower_bound_ok
        assert report.passed

    def test_corrupted_energy_fails(self):
        """Test that a 10 % error in the analytical energy is flagged."""
        report = compare_energies(20.111 * 1.1, 20.111, DESK)

        assert not report.within_gap
        assert not report.passed
        assert report.rel_gap == pytest.approx(0.1 / 1.1, rel=1e-6)

    def test_oracle_below_analytical_fails(self):
        """Test that an oracle far below the closed form breaks the one-sided bound."""
        report = compare_energies(20.111, 19.0, DESK)

        assert not report.lower_bound_ok
        assert report.slack == pytest.approx(0.07)

    def test_absolute_tolerance_for_small_energies(self):
        """Test that tiny energies are judged by the absolute tolerance."""
        report = compare_energies(0.0407, 0.08, DESK)

        assert report.within_gap

    def test_zero_energies(self):
        """Test that two zero energies agree."""
        report = compare_energies(0.0, 0.0, DESK)

        assert report.rel_gap == 0.0
        assert report.passed


class TestCrosscheck:
    """Tests for crosscheck and random scenarios."""

    def test_green_arrival_agrees(self):
        """Test the planner against the oracle on a green arrival."""
        report = crosscheck(load_fixture("fig1"), DESK, label="fig1")

        assert report.label == "fig1"
        assert report.t_p == pytest.approx(10.4395, abs=2e-3)
        assert report.passed

    def test_random_scenarios_are_reproducible(self):
        """Test that the same seed draws the same scenarios."""
        first = random_scenarios(5, seed=7)
        second = random_scenarios(5, seed=7)

        assert first == second
        assert first != random_scenarios(5, seed=8)

    def test_random_scenarios_ranges(self, limits):
        """Test the ranges of the random draws."""
        for s in random_scenarios(50, seed=1):
            assert limits.v_min <= s.v0 <= limits.v_max
            assert 100.0 <= s.l <= 2500.0
            assert 0.3 <= s.light.duty <= 0.7
            assert 0.0 <= s.light.offset < 60.0
            assert s.light.period == 60.0


@pytest.mark.slow
class TestOracleAgreement:
    """Agreement between planner and oracle at the desk grid."""

    @pytest.mark.parametrize(
        "label, scenario",
        [(name, load_fixture(name)) for name in list_fixtures()]
        + [(f"random-{i}", s) for i, s in enumerate(random_scenarios(20, seed=2024))],
    )
    def test_batch_agrees(self, label, scenario):
        """Test the gap tolerance and the one-sided bound for every scenario in the batch."""
        try:
            report = crosscheck(scenario, DESK, label=label)
        except NoFeasiblePlanError:
            pytest.skip(f"{label} has no reachable green arrival")

        assert report.within_gap, f"{label}: analytical {report.analytical_energy}, DP {report.dp_energy}"
        assert report.lower_bound_ok

    def test_desk_run_time(self):
        """Test that one long-horizon oracle run finishes in under a minute."""
        start = time.perf_counter()
        report = crosscheck(load_fixture("fig7"), DESK, label="fig7")

        assert time.perf_counter() - start < 60.0
        assert report.passed

    def test_halving_the_grid_does_not_widen_the_gap(self):
        """Test that halving dt and dv never increases the largest gap."""
        coarse = GridSpec(dt=0.1, dv=0.05, dx=0.5, control_levels=31)
        halved = coarse.model_copy(update={"dt": 0.05, "dv": 0.025})
        batch = [load_fixture(name) for name in ("fig1", "fig3", "fig4")]

        coarse_gap = max(crosscheck(s, coarse).abs_gap for s in batch)
        halved_gap = max(crosscheck(s, halved).abs_gap for s in batch)

        assert halved_gap <= coarse_gap + 1e-3
