class InvarError(Exception):
    """Base class for all errors raised by the library."""


class ValidationError(InvarError, ValueError):
    """Input is malformed or violates a precondition."""


class BudgetExceeded(InvarError):
    """A configured cap (group size, enumeration budget, search bound) was hit."""
