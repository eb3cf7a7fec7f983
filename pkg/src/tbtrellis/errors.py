"""Exception types shared across the package."""

from __future__ import annotations


class TrellisError(Exception):
    """Base class for all package errors."""


class DimensionError(TrellisError, ValueError):
    pass


class CapacityError(TrellisError):
    """An exhaustive enumeration would exceed the configured limit."""


class RankError(TrellisError, ValueError):
    pass


class ClosureError(TrellisError, ValueError):
    """A vector set that should be a subspace is not closed under addition."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class MembershipError(TrellisError, ValueError):
    pass


class ValidationError(TrellisError, ValueError):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ParseError(TrellisError, ValueError):
    """Malformed text input; carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.detail = message
