"""Exception hierarchy.

Validation problems (bad grids, bad fields, bad parameters) derive from
``ValueError`` as well, so callers that only know the stdlib can still catch them.
Solver failures are plain ``GlnmError`` subclasses.
"""


class GlnmError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(GlnmError, ValueError):
    """Input does not satisfy a documented precondition."""


class GridError(ValidationError):
    pass


class FieldError(ValidationError):
    pass


class StencilError(GlnmError):
    """A stencil denominator is too small for the requested step."""


class PropagationError(GlnmError):
    pass


class EigenError(GlnmError):
    pass


class ScfError(GlnmError):
    """SCF loop failed; ``state`` holds the last completed iteration if any."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
