"""Exception types shared across the package."""

__all__ = ["TensorcatError", "StructuralError", "PreconditionError", "ValidationFailure"]


class TensorcatError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(TensorcatError):
    """Malformed input: bad shapes, inadmissible entries, schema violations."""


class PreconditionError(TensorcatError):
    """A documented operation precondition does not hold for the input."""


class ValidationFailure(TensorcatError):
    """Category data failed coherence validation; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = list(report or [])
