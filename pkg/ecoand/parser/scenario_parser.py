"""Scenario file parser.

Scenario files are flat ``key = value`` documents in SI units. Blank lines and
lines starting with ``#`` are ignored; a ``#`` after a value starts a trailing
comment. Example::

    # Short approach, green from t = 0
    v0 = 10.8869
    l = 200
    v_min = 2.78
    v_max = 22.22
    u_min = -2.9
    u_max = 2.5
    rho = 0.9549
    light.period = 60
    light.duty = 0.6666666666666666
"""

import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ecoand.exceptions import ScenarioParseError
from ecoand.models.scenario import LightSchedule, Limits, Scenario, validate_scenario

logger = logging.getLogger(__name__)


class ScenarioFile(BaseModel):
    """Typed view of a scenario file; dotted keys map to ``light_*`` fields."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True, allow_inf_nan=False)

    t0: float = 0.0
    v0: float
    l: float  # noqa: E741
    v_min: float
    v_max: float
    u_min: float
    u_max: float
    rho: float
    light_period: float = Field(alias="light.period")
    light_duty: float = Field(alias="light.duty")
    light_offset: float = Field(default=0.0, alias="light.offset")

    def to_scenario(self) -> Scenario:
        return Scenario(
            t0=self.t0,
            v0=self.v0,
            l=self.l,
            limits=Limits(v_min=self.v_min, v_max=self.v_max, u_min=self.u_min, u_max=self.u_max),
            rho=self.rho,
            light=LightSchedule(period=self.light_period, duty=self.light_duty, offset=self.light_offset),
        )


KNOWN_KEYS = {field.alias or name for name, field in ScenarioFile.model_fields.items()}
REQUIRED_KEYS = [field.alias or name for name, field in ScenarioFile.model_fields.items() if field.is_required()]


def _read_pairs(text: str) -> tuple[dict[str, str], dict[str, int]]:
    values: dict[str, str] = {}
    lines: dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioParseError(f"expected 'key = value', got {raw.strip()!r}", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ScenarioParseError("missing key before '='", line=number)
        if key not in KNOWN_KEYS:
            raise ScenarioParseError(f"unknown key '{key}'", line=number, key=key)
        if key in values:
            raise ScenarioParseError(f"duplicate key '{key}' (first set on line {lines[key]})", line=number, key=key)
        if not value:
            raise ScenarioParseError(f"missing value for '{key}'", line=number, key=key)
        values[key] = value
        lines[key] = number
    return values, lines


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document.

    Args:
        text: Scenario file contents

    Returns:
        The validated Scenario

    Raises:
        ScenarioParseError: On malformed lines, unknown, duplicate, missing or
            non-numeric keys
        ScenarioValidationError: If the parsed scenario breaks an invariant
    """
    values, lines = _read_pairs(text)

    for key in REQUIRED_KEYS:
        if key not in values:
            raise ScenarioParseError(f"missing required key '{key}'", key=key)

    try:
        document = ScenarioFile.model_validate(values)
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else None
        raise ScenarioParseError(
            f"invalid value for '{key}': {first['msg']}",
            line=lines.get(key) if key else None,
            key=key,
        ) from e

    return validate_scenario(document.to_scenario())


def parse_scenario_file(path: str | Path) -> Scenario:
    """Read and parse a scenario file.

    Raises:
        OSError: If the file cannot be read
        ScenarioParseError: If the file is not UTF-8 text or not a valid scenario
    """
    logger.debug(f"Reading scenario from {path}")
    try:
        with open(path, encoding="utf-8") as file:
            text = file.read()
    except UnicodeDecodeError as e:
        raise ScenarioParseError(f"{path} is not valid UTF-8 text: {e.reason} at byte {e.start}") from e
    return parse_scenario(text)
