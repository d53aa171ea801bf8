"""Exception hierarchy shared by every module."""


class ChowlaError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(ChowlaError, ValueError):
    pass


class NotDivisible(ChowlaError, ValueError):
    pass


class NotAUnit(ChowlaError, ValueError):
    pass


class OutOfRange(ChowlaError, ValueError):
    pass


class DivisionByZero(ChowlaError, ZeroDivisionError):
    pass


class LengthMismatch(ChowlaError, ValueError):
    pass


class DimensionMismatch(ChowlaError, ValueError):
    pass


class ModulusMismatch(ChowlaError, ValueError):
    pass


class NotPrime(ChowlaError, ValueError):
    pass


class NotOdd(ChowlaError, ValueError):
    pass


class NotEven(ChowlaError, ValueError):
    pass


class DivergentSeries(ChowlaError, ArithmeticError):
    """The period sum is nonzero, so the series for L(1, f) diverges."""


class PreconditionFailed(ChowlaError, ValueError):
    pass


class Unresolved(ChowlaError, RuntimeError):
    """Numeric separation from zero failed at every precision in the schedule."""


class VerificationFailed(ChowlaError, AssertionError):
    """An exact result disagreed with its numeric cross-check."""
