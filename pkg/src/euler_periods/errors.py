"""Shared exception types.

Every error raised on a documented failure path derives from
:class:`EulerPeriodsError`, so callers (and the CLI) can map failures to
exit codes without matching on message text.
"""

from __future__ import annotations


class EulerPeriodsError(Exception):
    """Base class for all library errors."""


class PrecisionNotMet(EulerPeriodsError):
    """The requested error bound could not be certified."""


class DomainError(EulerPeriodsError):
    """Argument outside the mathematical domain of the operation."""


class DivergentIndex(DomainError):
    """Multiple-series index whose defining sum diverges."""


class Disconnected(EulerPeriodsError):
    """Graph operation that requires a connected graph."""


class TooLarge(EulerPeriodsError):
    """Input exceeds a documented size cap for an exhaustive algorithm."""


class NotPrimitive(EulerPeriodsError):
    """Graph fails the convergence test required for a period integral."""


class NonFiniteSample(EulerPeriodsError):
    """A Monte-Carlo integrand evaluation returned inf or nan."""

    def __init__(self, message: str, *, shard: int | None = None) -> None:
        super().__init__(message)
        self.shard = shard


class ParseError(EulerPeriodsError):
    """Expression text could not be parsed.  Carries the offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SchemaError(EulerPeriodsError):
    """A data file does not match its schema.  Carries entry/field info."""

    def __init__(self, message: str, *, entry: object = None, field: str | None = None) -> None:
        detail = message
        if entry is not None:
            detail += f" [entry {entry}]"
        if field is not None:
            detail += f" [field {field!r}]"
        super().__init__(detail)
        self.entry = entry
        self.field = field


class InputError(EulerPeriodsError):
    """Structurally valid input that the operation cannot accept."""


class NoConvergence(EulerPeriodsError):
    """An iterative solver failed to converge within its iteration cap."""


class InternalCheckError(EulerPeriodsError):
    """Two independent routes to the same quantity disagreed."""
