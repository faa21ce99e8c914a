from ecoand.fixtures.fixture_loader import (
    describe_fixture,
    get_fixture_path,
    list_fixtures,
    load_fixture,
    resolve_scenario,
)

__all__ = ["describe_fixture", "get_fixture_path", "list_fixtures", "load_fixture", "resolve_scenario"]
