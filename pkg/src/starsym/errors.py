"""Exception types shared across the package."""


class StarsymError(Exception):
    """Base class for all errors raised by starsym."""


class DimensionError(StarsymError, ValueError):
    """Operands live on phase spaces of different half-dimension."""


class OrderError(StarsymError, ValueError):
    """A symbol violates an order precondition (e.g. order > 0 for exponentials)."""


class FiltrationViolation(StarsymError, ValueError):
    """A t-symbol does not vanish at t = 0 to the order its declared order requires."""


class SingularMatrixError(StarsymError, ValueError):
    pass


class UnassignedParameter(StarsymError, KeyError):
    pass


class ParseError(StarsymError):
    """Syntax error in an expression, tagged with a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class LowerError(StarsymError):
    """An expression uses atoms that are not legal for the requested target."""
