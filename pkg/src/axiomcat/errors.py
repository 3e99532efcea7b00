"""Exception types raised by the library.

Checks never raise for a failed property; they return a :class:`~axiomcat.report.Report`.
Exceptions are reserved for inputs on which an operation cannot run at all.
"""
from __future__ import annotations


class AxiomcatError(Exception):
    """Base class for every error raised by this package."""


class NoPullbackError(AxiomcatError):
    """A pullback required by an operation does not exist."""


class NotStructuredError(AxiomcatError):
    """The operation needs strict display maps and a reindexing table."""


class NoPathObjectError(AxiomcatError):
    """No path object exists for the requested fibration."""


class ConstructionError(AxiomcatError):
    """An explicit construction produced data violating its own invariants."""


class LiftError(AxiomcatError):
    """No lift exists for a lifting problem.

    In a verified path category this is a counterexample to the lifting
    property, so the problem is kept on the exception for reporting.
    """

    def __init__(self, message: str, problem=None):
        super().__init__(message)
        self.problem = problem


class PreconditionError(AxiomcatError):
    """An input does not satisfy the precondition of an operation."""
