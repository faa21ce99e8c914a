"""Configuration file for pytest."""

import sys
from pathlib import Path

import pytest

# Add the project root directory to the Python path
root_dir = Path(__file__).parent.parent
sys.path.insert(0, str(root_dir))

from ecoand.config.settings import DEFAULT_LIMITS, DEFAULT_RHO  # noqa: E402
from ecoand.models.scenario import LightSchedule, Limits, Scenario  # noqa: E402


def make_scenario(
    v0: float,
    l: float,  # noqa: E741
    rho: float = DEFAULT_RHO,
    duty: float = 2.0 / 3.0,
    offset: float = 0.0,
    period: float = 60.0,
    t0: float = 0.0,
) -> Scenario:
    """Scenario with the default urban limits."""
    return Scenario(
        t0=t0,
        v0=v0,
        l=l,
        limits=Limits(**DEFAULT_LIMITS),
        rho=rho,
        light=LightSchedule(period=period, duty=duty, offset=offset),
    )


@pytest.fixture
def limits():
    """Fixture providing the default vehicle limits."""
    return Limits(**DEFAULT_LIMITS)


@pytest.fixture
def scenario_factory():
    """Fixture providing a scenario builder with default limits."""
    return make_scenario
