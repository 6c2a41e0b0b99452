"""Error types shared by the feasibility toolkit.

Each error carries the process exit code the CLI uses when it surfaces.
"""

from typing import Optional


class FeasibilityError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ConfigError(FeasibilityError):
    """Invalid configuration file or override."""

    exit_code = 2

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        """
        Initialize the config error.

        Args:
            message: Human readable description
            key: Dotted config key involved, if any
            line: 1-based line number in the config file, if known
        """
        location = []
        if line is not None:
            location.append(f"line {line}")
        if key is not None:
            location.append(key)
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.reason = message
        self.key = key
        self.line = line


class DomainError(FeasibilityError, ValueError):
    """A physical input violates its precondition."""

    exit_code = 3

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.reason = message


class SolverError(FeasibilityError):
    """A root search failed to bracket or converge."""

    exit_code = 4

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


def require_finite_positive(field: str, value: float) -> float:
    """Return value as float, raising DomainError unless it is finite and > 0."""
    value = float(value)
    if not value > 0 or value == float('inf'):
        raise DomainError(field, f"must be finite and > 0 (got {value!r})")
    return value


def require_finite_non_negative(field: str, value: float) -> float:
    """Return value as float, raising DomainError unless it is finite and >= 0."""
    value = float(value)
    if not value >= 0 or value == float('inf'):
        raise DomainError(field, f"must be finite and >= 0 (got {value!r})")
    return value
