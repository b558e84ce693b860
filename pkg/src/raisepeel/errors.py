"""Exception types shared across the package.

Invalid arguments raise the builtin ValueError; the classes below cover the
two failure modes that are not caller mistakes.
"""


class ResourceLimitError(RuntimeError):
    """Requested size exceeds a documented enumeration/memory ceiling."""


class NumericFailureError(RuntimeError):
    """A numeric routine did not converge or violated a reality check."""


class ContinuationError(NumericFailureError):
    """Homotopy continuation broke down; carries the last good parameters."""

    def __init__(self, message, last_good=None):
        super().__init__(message)
        self.last_good = last_good
