"""Exception hierarchy shared by all modules.

The CLI maps these to exit codes: :class:`InvariantBreach` is an internal
failure (exit 3), everything else derived from :class:`FacialThueError` is
bad input (exit 1).
"""

from __future__ import annotations


class FacialThueError(Exception):
    """Base class for all errors raised by this package."""


# graphs and documents

class GraphError(FacialThueError, ValueError):
    pass


class GraphSyntaxError(GraphError):
    """The graph document could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class SemanticError(GraphError):
    """A rotation system violates one of its invariants.

    ``element`` names the offending part, e.g. ``"rotations[3]"`` or
    ``"edges[7]"``.
    """

    def __init__(self, message: str, element: str | None = None):
        self.element = element
        where = f" at {element}" if element else ""
        super().__init__(f"{message}{where}")


class NotConnected(SemanticError):
    pass


class HasLoop(SemanticError):
    pass


class HasParallelEdge(SemanticError):
    pass


class EulerViolation(SemanticError):
    pass


class UnknownFamily(GraphError):
    pass


class ParamOutOfRange(GraphError):
    pass


# facial paths

class DescriptorError(FacialThueError, ValueError):
    pass


class InvalidDescriptor(DescriptorError):
    pass


class NotFacial(DescriptorError):
    pass


class OddLength(DescriptorError):
    pass


class EdgeNotOnPath(DescriptorError):
    pass


class UncolouredEdge(DescriptorError):
    pass


# colouring runs

class ColoringError(FacialThueError, ValueError):
    pass


class EmptyInput(ColoringError):
    pass


class ListSizeMismatch(ColoringError):
    pass


# log inversion

class ReplayError(FacialThueError, ValueError):
    pass


class CorruptRecord(ReplayError):
    pass


class InconsistentLog(ReplayError):
    pass


# counting

class AnalysisError(FacialThueError, ValueError):
    pass


class OverflowingRecord(AnalysisError):
    pass


class NTooLarge(AnalysisError):
    pass


class KTooSmall(AnalysisError):
    pass


class InvariantBreach(FacialThueError, AssertionError):
    """A loop invariant or oracle cross-check failed at run time."""
