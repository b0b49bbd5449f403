"""Exception types shared across the library."""


class DegenerateInputError(ValueError):
    """An operation received geometrically meaningless input (e.g. coincident points)."""


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated."""


class BudgetExceededError(RuntimeError):
    """A hard resource guard tripped (column count, segment count, candidate count).

    Raised instead of silently approximating or truncating.
    """


class StreamChainError(RuntimeError):
    """A trajectory stream produced segments that do not chain end-to-start."""
