"""Exception types raised across the package."""


class M0nError(Exception):
    pass


class InvalidN(M0nError, ValueError):
    """Raised for a number of marked points below 3."""


class NotPalindromic(M0nError, ValueError):
    pass


class LengthMismatch(M0nError, ValueError):
    pass


class FormViolation(M0nError):
    """A computed object does not have the shape a proven theorem guarantees.

    Always indicates a bug in this package, never a property of the input.
    """


class NonIntegerResult(FormViolation):
    pass


class TruncationTooSmall(M0nError, ValueError):
    pass


class ConstantTermMismatch(M0nError):
    pass
