"""Exception types raised across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Base class for malformed graph input."""


class InvalidEdge(GraphError):
    def __init__(self, u, v, reason="invalid edge"):
        self.edge = (u, v)
        super().__init__(f"{reason}: ({u}, {v})")


class DegreeExceeded(GraphError):
    def __init__(self, vertex, degree, bound):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has degree {degree} > bound {bound}")


class OutOfRange(IndexError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class InfeasibleSpec(ValueError):
    pass


class RadiusMismatch(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


class AboveCap(RuntimeError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"more than {cap} edge deletions required")


class NoAdmissibleR(RuntimeError):
    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class CalibrationFailed(RuntimeError):
    def __init__(self, message, frontier=None):
        self.frontier = frontier or []
        super().__init__(message)
