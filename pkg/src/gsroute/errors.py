"""Exception types raised across the package."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for every domain error raised by gsroute."""


class UnknownVertexError(GraphError, KeyError):
    def __init__(self, vertex: int) -> None:
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self) -> str:
        return f"unknown vertex {self.vertex!r}"


class DuplicateVertexError(GraphError, ValueError):
    pass


class GraphFormatError(GraphError, ValueError):
    """Malformed graph input; ``location`` names the offending field."""

    def __init__(self, message: str, location: str | None = None) -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InvalidNeighborError(GraphError, ValueError):
    pass


class MeasurementSequenceError(GraphError):
    """A step in a measurement sequence failed; ``index`` is its position."""

    def __init__(self, index: int, cause: Exception) -> None:
        self.index = index
        self.cause = cause
        super().__init__(f"step {index}: {cause}")


class NotRepeaterLineError(GraphError, ValueError):
    pass


class DisconnectedPairError(GraphError):
    pass


class NoRouteError(GraphError):
    pass


class ProtocolConsistencyError(GraphError, RuntimeError):
    pass


class BadDimensionError(GraphError, ValueError):
    pass


class TooLargeError(GraphError, ValueError):
    pass


class BudgetExhausted(GraphError):
    """A bounded search ran out of budget before reaching a verdict."""

    def __init__(self, message: str, explored: int) -> None:
        super().__init__(message)
        self.explored = explored
