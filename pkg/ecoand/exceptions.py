"""Exception types raised by the ecoand library."""


class EcoAndError(Exception):
    """Base class for all ecoand errors."""


class ScenarioValidationError(EcoAndError, ValueError):
    """A scenario violates one or more of its invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ScenarioParseError(EcoAndError, ValueError):
    """A scenario file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        location = f"line {line}: " if line is not None else ""
        super().__init__(f"{location}{message}")


class UnreachableError(EcoAndError):
    """The requested arrival time is earlier than full throttle allows."""


class TooLateError(EcoAndError):
    """The requested arrival time is later than the slowest legal approach allows."""


class NoFeasiblePlanError(EcoAndError):
    """No green arrival instant is reachable from the current state."""


class OracleInfeasibleError(EcoAndError):
    """The discretized grid cannot reach the stop line at the requested time."""


class RootBracketError(EcoAndError):
    """A root-finding bracket does not contain a sign change."""
