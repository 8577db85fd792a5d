"""Exception types shared across the package."""


class PonceletError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidInput(PonceletError, ValueError):
    """An argument violates an operation's precondition."""


class DivisionByZero(PonceletError, ZeroDivisionError):
    """Inverse of the zero element was requested."""


class FieldMismatch(PonceletError, TypeError):
    """Elements of two different fields were combined."""


class SingularConic(InvalidInput):
    """A conic that must be smooth has vanishing determinant."""


class UnsupportedCharacteristic(InvalidInput):
    """The torsion order shares a factor with the field characteristic."""


class BadReduction(InvalidInput):
    """The family parameter gives a singular cubic."""
