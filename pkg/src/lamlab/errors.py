"""Errors and resource caps shared across the package."""

import os

DEFAULT_MAX_PERIOD = 22
DEFAULT_MAX_DEPTH = 10


class DomainError(ValueError):
    """Input outside an operation's domain (even denominator, crossing leaves, ...)."""


class DegenerateMinorError(DomainError):
    """Angle 0: main cardioid, its minor leaf is degenerate."""


class ResourceCapError(RuntimeError):
    """A period/depth bound exceeded the configured cap."""


class InternalConsistencyError(RuntimeError):
    """A structural assertion failed; indicates a bug, not a bad input."""


def max_period() -> int:
    """Resource cap on periods, overridable via LAMLAB_MAX_PERIOD."""
    raw = os.environ.get("LAMLAB_MAX_PERIOD")
    if raw is None:
        return DEFAULT_MAX_PERIOD
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_PERIOD


def check_period_cap(n: int, cap: int | None = None) -> None:
    limit = max_period() if cap is None else cap
    if n > limit:
        raise ResourceCapError(f"period {n} exceeds cap {limit}")
