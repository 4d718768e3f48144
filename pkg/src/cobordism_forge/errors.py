"""Exception types shared across the package."""


class TruncationError(ArithmeticError):
    """A computation needs coefficients beyond the context's truncation."""

    def __init__(self, message, required_degree=None):
        super().__init__(message)
        self.required_degree = required_degree


class NotIntegralError(ArithmeticError):
    """A rational element is not in the integral Lazard ring."""


class NotDivisibleError(ArithmeticError):
    """A division by ``p`` (or by ``[p]u``) failed.

    ``location`` is the ``(l, j)`` series position where the failure was
    detected, or ``None`` for scalar divisions.
    """

    def __init__(self, location, value=None, reason="quotient by p is not integral"):
        where = "" if location is None else " at x^%d u^%d" % tuple(location)
        super().__init__("%s%s" % (reason, where))
        self.location = location
        self.value = value
        self.reason = reason


class ParseError(ValueError):
    """Syntax or range error in an expression, with 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.message = message
        self.line = line
        self.column = column
