"""Utility functions for loading the bundled scenario fixtures."""

import logging
from pathlib import Path

from ecoand.models.scenario import Scenario
from ecoand.parser.scenario_parser import parse_scenario_file

# Configure logging
logger = logging.getLogger(__name__)

FIXTURE_SUFFIX = ".scenario"


def get_fixture_path(name: str) -> Path:
    """Get the file path for a bundled fixture.

    Args:
        name: Fixture name without extension (e.g. ``fig4``)

    Returns:
        Path to the fixture file, which may not exist
    """
    return Path(__file__).parent / f"{name}{FIXTURE_SUFFIX}"


def list_fixtures() -> list[str]:
    """Names of all bundled fixtures, sorted."""
    return sorted(path.stem for path in Path(__file__).parent.glob(f"*{FIXTURE_SUFFIX}"))


def describe_fixture(name: str) -> str:
    """First comment line of a fixture, or an empty string."""
    path = get_fixture_path(name)
    with open(path, encoding="utf-8") as file:
        first = file.readline().strip()
    return first.lstrip("#").strip() if first.startswith("#") else ""


def load_fixture(name: str) -> Scenario:
    """Load and validate a bundled fixture.

    Raises:
        FileNotFoundError: If no fixture with that name exists
    """
    path = get_fixture_path(name)
    if not path.exists():
        logger.warning(f"Fixture not found: {path}")
        raise FileNotFoundError(f"Unknown fixture '{name}'. Available: {', '.join(list_fixtures())}")
    return parse_scenario_file(path)


def resolve_scenario(source: str) -> Scenario:
    """Load a scenario from a file path or, failing that, a bundled fixture name."""
    path = Path(source)
    if path.is_file():
        return parse_scenario_file(path)
    if get_fixture_path(source).exists():
        logger.debug(f"Using bundled fixture '{source}'")
        return load_fixture(source)
    raise FileNotFoundError(f"Scenario file not found: {source}")
