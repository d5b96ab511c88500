"""
Exception hierarchy for ptchain.

Every error carries the CLI exit code it maps to, so the command layer can
translate a failure into a single diagnostic line and a process status.
"""

from typing import Any, Dict, Optional

from ptchain.core.constants import EXIT_EMPTY_RESULT, EXIT_SOLVER, EXIT_VALIDATION


class PtChainError(Exception):
    """Base class for all ptchain failures."""

    exit_code = 1


class ValidationError(PtChainError, ValueError):
    """Invalid model parameters, tolerances or command-line flags."""

    exit_code = EXIT_VALIDATION


class EmptyResultError(PtChainError):
    """The computation succeeded but the requested physical object does not exist."""

    exit_code = EXIT_EMPTY_RESULT


class SolverError(PtChainError):
    """
    Eigensolver or classification failure.

    Attributes:
        deflation_index: Index reached by the QR deflation before giving up,
                         when the failure is a non-convergence.
        coordinates: Sweep or grid coordinates of the failing point, if any.
    """

    exit_code = EXIT_SOLVER

    def __init__(
        self,
        message: str,
        deflation_index: Optional[int] = None,
        coordinates: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.deflation_index = deflation_index
        self.coordinates = dict(coordinates or {})

    def __reduce__(self):
        # Keep the fields when re-raised from a worker process
        return (
            type(self),
            (self.message, self.deflation_index, self.coordinates),
        )

    def at(self, **coordinates: Any) -> "SolverError":
        """Return a copy of this error with grid coordinates attached."""
        where = ", ".join(f"{key}={value!r}" for key, value in coordinates.items())
        merged = {**self.coordinates, **coordinates}
        return type(self)(f"{self.message} (at {where})", self.deflation_index, merged)
