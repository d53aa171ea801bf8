"""Rigorous complex boxes built on mpmath's interval context.

The interval context keeps a single global precision, so every operation here
sets it explicitly for its own duration.  Results are outward rounded: the
true value always lies inside the box.
"""
from __future__ import annotations

from contextlib import contextmanager
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
import math

from mpmath import iv, mp

DEFAULT_PRECISION = 256
MIN_PRECISION = 32


@contextmanager
def working_precision(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _lo(x):
    return mp.make_mpf(x._mpi_[0])


def _hi(x):
    return mp.make_mpf(x._mpi_[1])


def to_interval(value) -> "iv.mpf":
    """Interval containing an int, Fraction, float or interval at the current precision."""
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / value.denominator
    return iv.mpf(value)


def _mpf_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    value = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -value if sign else value


def _outward_decimal(x, digits: int, rounding: str) -> str:
    fr = _mpf_fraction(x)
    ctx = Context(prec=digits, rounding=rounding)
    d = ctx.divide(Decimal(fr.numerator), Decimal(fr.denominator))
    return str(d)


class ComplexEnclosure:
    """Axis-aligned box ``[real_lo, real_hi] + i [imag_lo, imag_hi]``."""

    __slots__ = ("real", "imag", "precision")

    def __init__(self, real, imag, precision: int = DEFAULT_PRECISION):
        if precision < MIN_PRECISION:
            raise ValueError(f"precision must be at least {MIN_PRECISION} bits")
        with working_precision(precision):
            self.real = iv.mpf(real)
            self.imag = iv.mpf(imag)
        self.precision = precision

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION) -> ComplexEnclosure:
        return cls(0, 0, precision)

    @classmethod
    def from_value(cls, value, precision: int = DEFAULT_PRECISION) -> ComplexEnclosure:
        with working_precision(precision):
            if isinstance(value, complex):
                return cls(iv.mpf(value.real), iv.mpf(value.imag), precision)
            return cls(to_interval(value), 0, precision)

    # endpoints -----------------------------------------------------------
    @property
    def real_lo(self):
        return _lo(self.real)

    @property
    def real_hi(self):
        return _hi(self.real)

    @property
    def imag_lo(self):
        return _lo(self.imag)

    @property
    def imag_hi(self):
        return _hi(self.imag)

    def width(self):
        """Largest side length of the box."""
        return max(self.real_hi - self.real_lo, self.imag_hi - self.imag_lo)

    def midpoint(self):
        with mp.workprec(self.precision):
            return mp.mpc((self.real_lo + self.real_hi) / 2, (self.imag_lo + self.imag_hi) / 2)

    def abs_upper(self):
        """Upper bound on ``|z|`` over the box."""
        with working_precision(self.precision):
            re = max(abs(self.real_lo), abs(self.real_hi))
            im = max(abs(self.imag_lo), abs(self.imag_hi))
            return _hi(iv.sqrt(iv.mpf(re) ** 2 + iv.mpf(im) ** 2))

    # predicates ----------------------------------------------------------
    def contains(self, value) -> bool:
        if isinstance(value, ComplexEnclosure):
            return (
                self.real_lo <= value.real_lo
                and value.real_hi <= self.real_hi
                and self.imag_lo <= value.imag_lo
                and value.imag_hi <= self.imag_hi
            )
        z = mp.mpc(value)
        return self.real_lo <= z.real <= self.real_hi and self.imag_lo <= z.imag <= self.imag_hi

    def contains_zero(self) -> bool:
        return self.contains(0)

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def overlaps(self, other: ComplexEnclosure) -> bool:
        return not (
            self.real_hi < other.real_lo
            or other.real_hi < self.real_lo
            or self.imag_hi < other.imag_lo
            or other.imag_hi < self.imag_lo
        )

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> ComplexEnclosure | None:
        if isinstance(other, ComplexEnclosure):
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return ComplexEnclosure.from_value(other, self.precision)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = min(self.precision, other.precision)
        with working_precision(prec):
            return ComplexEnclosure(self.real + other.real, self.imag + other.imag, prec)

    __radd__ = __add__

    def __neg__(self):
        with working_precision(self.precision):
            return ComplexEnclosure(-self.real, -self.imag, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = min(self.precision, other.precision)
        with working_precision(prec):
            a, b, c, d = self.real, self.imag, other.real, other.imag
            return ComplexEnclosure(a * c - b * d, a * d + b * c, prec)

    __rmul__ = __mul__

    def scale(self, factor) -> ComplexEnclosure:
        """Multiply by a real number (int, Fraction or real interval)."""
        with working_precision(self.precision):
            f = to_interval(factor)
            return ComplexEnclosure(self.real * f, self.imag * f, self.precision)

    def log(self) -> ComplexEnclosure:
        """Principal logarithm; defined here only for boxes in the open right half-plane."""
        if self.real_lo <= 0:
            raise ValueError("log enclosure requires a box with positive real part")
        with working_precision(self.precision):
            modulus_sq = self.real ** 2 + self.imag ** 2
            return ComplexEnclosure(iv.log(modulus_sq) / 2, iv.atan2(self.imag, self.real), self.precision)

    # output --------------------------------------------------------------
    def to_json(self, digits: int | None = None) -> dict:
        if digits is None:
            digits = int(self.precision * math.log10(2)) + 2
        return {
            "re": [_outward_decimal(self.real_lo, digits, ROUND_FLOOR),
                   _outward_decimal(self.real_hi, digits, ROUND_CEILING)],
            "im": [_outward_decimal(self.imag_lo, digits, ROUND_FLOOR),
                   _outward_decimal(self.imag_hi, digits, ROUND_CEILING)],
            "precision_bits": self.precision,
        }

    def __repr__(self) -> str:
        mid = self.midpoint()
        return (
            f"ComplexEnclosure(mid={mp.nstr(mid, 20)}, width={mp.nstr(self.width(), 3)}, "
            f"precision={self.precision})"
        )
