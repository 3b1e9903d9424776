"""Exception types shared across the package."""

from __future__ import annotations


class PowerDomError(Exception):
    """Base class for all errors raised by :mod:`powerdom`."""


class GraphFormatError(PowerDomError, ValueError):
    """Malformed graph input. ``position`` is a 1-based line (edge list) or byte offset (graph6)."""

    def __init__(self, message: str, position: int | None = None, unit: str = "line"):
        if position is not None:
            message = f"{message} ({unit} {position})"
        super().__init__(message)
        self.position = position


class CapExceeded(PowerDomError):
    """A configured size cap would be exceeded; ``required`` is the cap that would be needed."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class PartitionError(PowerDomError, ValueError):
    """Not a partition of the vertex set, or malformed per-part data."""

    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        super().__init__(message)
        self.indices = tuple(indices)


class NotATreeError(PowerDomError, ValueError):
    pass
