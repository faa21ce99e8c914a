"""Tests for scenario models and light schedule queries."""

import numpy as np
import pytest
from pydantic import ValidationError

from ecoand.exceptions import ScenarioValidationError
from ecoand.models.scenario import (
    LightSchedule,
    Limits,
    RedWindow,
    Scenario,
    build_scenario,
    collect_violations,
    is_green,
    red_window_bounds,
    validate_scenario,
)


class TestIsGreen:
    """Tests for is_green."""

    @pytest.fixture
    def light(self):
        """Fixture providing a 60 s light, green for the first 40 s."""
        return LightSchedule(period=60.0, duty=2.0 / 3.0)

    @pytest.mark.parametrize(
        "t, expected",
        [
            (0.0, True),
            (20.0, True),
            (40.0, True),
            (40.0001, False),
            (59.999, False),
            (60.0, True),
            (100.0, True),
            (110.0, False),
        ],
    )
    def test_green_and_red_times(self, light, t, expected):
        """Test green windows including both endpoints."""
        assert is_green(light, t) is expected

    def test_offset_shifts_the_cycle(self):
        """Test that the cycle starts at the offset."""
        light = LightSchedule(period=60.0, duty=1.0 / 3.0, offset=40.0)

        assert is_green(light, 12.0) is False
        assert is_green(light, 40.0) is True
        assert is_green(light, 60.0) is True
        assert is_green(light, 61.0) is False
        assert is_green(light, 100.0) is True

    def test_green_end_survives_rounding(self):
        """Test that offset + duty * period counts as green despite rounding."""
        light = LightSchedule(period=60.0, duty=1.0 / 3.0, offset=40.0)

        assert is_green(light, light.offset + light.duty * light.period)

    def test_periodicity(self, light):
        """Test that shifting by whole periods never changes the state."""
        rng = np.random.default_rng(3)
        for t in rng.uniform(-200.0, 200.0, size=200):
            for k in (-2, 1, 5):
                assert is_green(light, t) == is_green(light, t + k * light.period)


class TestRedWindowBounds:
    """Tests for red_window_bounds."""

    def test_red_time_between_greens(self):
        """Test the bracketing green instants in a red phase."""
        light = LightSchedule(period=60.0, duty=2.0 / 3.0)

        window = red_window_bounds(light, 45.0)

        assert isinstance(window, RedWindow)
        assert window.prev_green_end == pytest.approx(40.0)
        assert window.next_green_start == pytest.approx(60.0)

    def test_red_before_first_green(self):
        """Test that no previous green exists before the offset."""
        light = LightSchedule(period=60.0, duty=1.0 / 3.0, offset=40.0)

        window = red_window_bounds(light, 12.0)

        assert window is not None
        assert window.prev_green_end is None
        assert window.next_green_start == pytest.approx(40.0)

    def test_later_cycle(self):
        """Test a red time several cycles in."""
        light = LightSchedule(period=60.0, duty=1.0 / 3.0)

        window = red_window_bounds(light, 100.0)

        assert window is not None
        assert window.prev_green_end == pytest.approx(80.0)
        assert window.next_green_start == pytest.approx(120.0)

    def test_green_time_has_no_window(self):
        """Test that green times return None."""
        light = LightSchedule(period=60.0, duty=2.0 / 3.0)

        assert red_window_bounds(light, 10.0) is None

    def test_bounds_properties(self):
        """Test that the bounds bracket the red time and are green themselves."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            light = LightSchedule(
                period=float(rng.uniform(20.0, 120.0)),
                duty=float(rng.uniform(0.1, 0.9)),
                offset=float(rng.uniform(0.0, 60.0)),
            )
            t = float(rng.uniform(0.0, 500.0))
            window = red_window_bounds(light, t)
            if window is None:
                assert is_green(light, t)
                continue
            assert window.next_green_start > t
            assert window.next_green_start - t <= light.period * (1.0 - light.duty) + 1e-9
            assert is_green(light, window.next_green_start)
            if window.prev_green_end is not None:
                assert window.prev_green_end < t
                assert is_green(light, window.prev_green_end)


class TestValidateScenario:
    """Tests for scenario validation."""

    @pytest.fixture
    def scenario(self, limits):
        """Fixture providing a valid scenario."""
        return Scenario(
            v0=10.8869,
            l=200.0,
            limits=limits,
            rho=0.9549,
            light=LightSchedule(period=60.0, duty=2.0 / 3.0),
        )

    def test_valid_scenario_passes(self, scenario):
        """Test that a valid scenario is returned unchanged."""
        assert validate_scenario(scenario) is scenario
        assert collect_violations(scenario) == []

    @pytest.mark.parametrize(
        "update, message",
        [
            ({"v0": 30.0}, "v0 exceeds v_max"),
            ({"v0": 1.0}, "v0 is below v_min"),
            ({"l": 0.0}, "l must be positive"),
            ({"rho": 1.5}, "rho must be in [0,1]"),
        ],
    )
    def test_single_violation(self, scenario, update, message):
        """Test that each broken invariant is reported by name."""
        with pytest.raises(ScenarioValidationError) as exc_info:
            validate_scenario(scenario.model_copy(update=update))

        assert exc_info.value.violations == [message]

    def test_light_violations(self, scenario):
        """Test that duty and period are checked."""
        light = LightSchedule(period=60.0, duty=1.0)

        with pytest.raises(ScenarioValidationError) as exc_info:
            validate_scenario(scenario.model_copy(update={"light": light}))

        assert "duty must be in (0,1)" in exc_info.value.violations

    def test_all_violations_are_listed(self, scenario):
        """Test that several violations are reported together."""
        limits = Limits(v_min=5.0, v_max=4.0, u_min=1.0, u_max=2.5)
        broken = scenario.model_copy(update={"limits": limits, "rho": -0.1})

        with pytest.raises(ScenarioValidationError) as exc_info:
            validate_scenario(broken)

        violations = exc_info.value.violations
        assert "v_min must be less than v_max" in violations
        assert "u_min must be negative" in violations
        assert "rho must be in [0,1]" in violations
        assert isinstance(exc_info.value, ValueError)

    def test_non_finite_values_rejected(self, limits):
        """Test that pydantic rejects infinite inputs."""
        with pytest.raises(ValidationError):
            Scenario(
                v0=float("inf"),
                l=200.0,
                limits=limits,
                rho=0.5,
                light=LightSchedule(period=60.0, duty=0.5),
            )


class TestBuildScenario:
    """Tests for build_scenario."""

    def test_builds_from_plain_values(self):
        """Test building a scenario from dictionaries."""
        s = build_scenario(
            v0=10.0,
            l=200.0,
            limits={"v_min": 2.78, "v_max": 22.22, "u_min": -2.9, "u_max": 2.5},
            rho=0.5,
            light={"period": 60.0, "duty": 0.5},
        )

        assert s.t0 == 0.0
        assert s.light.offset == 0.0
        assert s.limits.v_max == 22.22

    def test_type_errors_become_validation_errors(self):
        """Test that pydantic errors are translated."""
        with pytest.raises(ScenarioValidationError) as exc_info:
            build_scenario(
                v0="fast",
                l=200.0,
                limits={"v_min": 2.78, "v_max": 22.22, "u_min": -2.9, "u_max": 2.5},
                rho=0.5,
                light={"period": 60.0, "duty": 0.5},
            )

        assert any(v.startswith("v0") for v in exc_info.value.violations)

    def test_invariants_checked(self):
        """Test that invariant violations surface from build_scenario."""
        with pytest.raises(ScenarioValidationError, match="v0 exceeds v_max"):
            build_scenario(
                v0=25.0,
                l=200.0,
                limits={"v_min": 2.78, "v_max": 22.22, "u_min": -2.9, "u_max": 2.5},
                rho=0.5,
                light={"period": 60.0, "duty": 0.5},
            )
