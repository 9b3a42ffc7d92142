from __future__ import annotations


class GTModError(Exception):
    """Base class for every error raised by gtmod."""


class InputError(GTModError, ValueError):
    """Malformed input: bad JSON shape, wrong sizes, invalid indices."""


class SpecError(InputError):
    """A basis tag or tableau that does not belong to the module spec."""


class JetError(GTModError, ArithmeticError):
    pass


class JetZeroDivisionError(JetError, ZeroDivisionError):
    pass


class InsufficientTruncationError(JetError):
    """A coefficient above the known truncation order was requested."""


class PoleOrderError(JetError):
    """A result needs coefficients below the configured pole floor."""


class PoleWithoutPathError(GTModError, ZeroDivisionError):
    """A denominator vanishes at a critical point and no path is attached."""


class IrregularCoefficientError(GTModError):
    """A 1-singular action coefficient came out with a pole in epsilon."""

    def __init__(self, message: str, jet=None):
        super().__init__(message)
        self.jet = jet
