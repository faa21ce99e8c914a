"""Tests for the config_models module."""

import pytest
from pydantic import ValidationError

from ecoand.config.config_models import GridSpec, LimitsPreset, PresetRegistry
from ecoand.models.scenario import Limits


class TestGridSpec:
    """Test the GridSpec model."""

    def test_default_values(self):
        """Test default values for GridSpec."""
        grid = GridSpec(dt=0.05, dv=0.02, dx=0.25)

        assert grid.control_levels == 59
        assert grid.refine is True
        assert grid.description is None

    @pytest.mark.parametrize("field", ["dt", "dv", "dx"])
    def test_resolution_must_be_positive(self, field):
        """Test that every resolution field must be positive."""
        values = {"dt": 0.05, "dv": 0.02, "dx": 0.25}
        values[field] = 0.0

        with pytest.raises(ValidationError):
            GridSpec(**values)

    def test_control_levels_minimum(self):
        """Test that fewer than three control levels are rejected."""
        with pytest.raises(ValidationError):
            GridSpec(dt=0.05, dv=0.02, dx=0.25, control_levels=2)

        assert GridSpec(dt=0.05, dv=0.02, dx=0.25, control_levels=3).control_levels == 3


class TestLimitsPreset:
    """Test the LimitsPreset model."""

    def test_to_limits(self):
        """Test conversion into scenario limits."""
        preset = LimitsPreset(v_min=2.78, v_max=22.22, u_min=-2.9, u_max=2.5, description="urban")

        assert preset.to_limits() == Limits(v_min=2.78, v_max=22.22, u_min=-2.9, u_max=2.5)

    def test_speed_order(self):
        """Test that v_min must stay below v_max."""
        with pytest.raises(ValidationError, match="v_min must be less than v_max"):
            LimitsPreset(v_min=22.22, v_max=2.78, u_min=-2.9, u_max=2.5)

    def test_control_signs(self):
        """Test that braking is negative and acceleration positive."""
        with pytest.raises(ValidationError):
            LimitsPreset(v_min=2.78, v_max=22.22, u_min=2.9, u_max=2.5)
        with pytest.raises(ValidationError):
            LimitsPreset(v_min=2.78, v_max=22.22, u_min=-2.9, u_max=-1.0)


class TestPresetRegistry:
    """Test the PresetRegistry model."""

    def test_limits_default_empty(self):
        """Test that limits presets are optional."""
        registry = PresetRegistry(grids={"desk": {"dt": 0.05, "dv": 0.02, "dx": 0.25}})

        assert registry.limits == {}
        assert isinstance(registry.grids["desk"], GridSpec)

    def test_grids_required(self):
        """Test that grids are required."""
        with pytest.raises(ValidationError):
            PresetRegistry()
