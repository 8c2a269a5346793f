"""Exception hierarchy shared by the core library, the HTTP service and the CLI.

Every error the toolkit can raise maps to exactly one CLI exit code and one
HTTP status, so the mapping lives here next to the exception classes.
"""

from __future__ import annotations


class OdeReduceError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1
    http_status = 500


class InputFormatError(OdeReduceError):
    """Malformed matrix/vector payloads, bad complex literals, bad flags."""

    exit_code = 2
    http_status = 400


class DimensionError(InputFormatError):
    """Operand dimensions do not agree."""


class MethodShapeError(OdeReduceError):
    """A fractional-power method was asked to act outside its admitted class."""

    exit_code = 3
    http_status = 400


class SpectrumDomainError(MethodShapeError):
    """Matrix spectrum violates a method precondition (e.g. not in the right half-plane)."""


class UnknownForcingError(OdeReduceError):
    """Forcing name not found in the shipped library."""

    exit_code = 4
    http_status = 400


class BlowUpError(OdeReduceError):
    """Integration produced a non-finite or astronomically large state."""

    exit_code = 5
    http_status = 422

    def __init__(self, message: str, t_bad: float):
        super().__init__(message)
        self.t_bad = t_bad


class ComputationError(OdeReduceError):
    """Numerical failure inside an otherwise well-posed computation."""

    exit_code = 1
    http_status = 500


class SingularMatrixError(ComputationError):
    """Matrix is singular where an inverse/log is required."""


class BranchCutError(ComputationError):
    """Eigenvalue too close to the branch cut for a stable principal log."""


class DefectiveMatrixError(ComputationError):
    """Eigenvector matrix numerically defective (condition estimate too large)."""


class ConvergenceError(ComputationError):
    """Iterative refinement failed to converge (e.g. quadrature panel doubling)."""
