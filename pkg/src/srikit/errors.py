class InputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""
