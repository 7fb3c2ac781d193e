"""Dyadic arbitrary-precision reals with a power-of-two absolute error bound."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

__all__ = ["BigReal", "working_bits", "decimal_bits"]

_LOG2_10 = math.log2(10)


def decimal_bits(digits: int) -> int:
    """Bits needed so that ``2**-bits <= 10**-digits``."""
    return math.ceil(digits * _LOG2_10)


def working_bits(digits: int) -> int:
    return decimal_bits(digits) + 32


def _err_sum(*exps: Optional[int]) -> Optional[int]:
    # smallest e with sum(2**x) <= 2**e; None entries are exact (zero error)
    live = [e for e in exps if e is not None]
    if not live:
        return None
    lo = min(live)
    s = sum(1 << (e - lo) for e in live)
    return lo + (s - 1).bit_length()


def _magnitude_exp(man: int, exp: int) -> int:
    # |man * 2**exp| <= 2**result
    return exp + abs(man).bit_length()


class BigReal:
    """Value ``man * 2**exp`` known to within ``2**err`` (``err=None``: exact).

    ``digits`` is the decimal precision the value was requested at; exact
    integers carry ``digits=None`` and refuse inexact division. Arithmetic rounds results to the working
    precision of the least precise operand and widens the error bound
    conservatively.
    """

    __slots__ = ("man", "exp", "err", "digits")

    def __init__(self, man: int, exp: int, err: Optional[int] = None, digits: Optional[int] = None):
        self.man = man
        self.exp = exp
        self.err = err
        self.digits = digits

    # construction
    @classmethod
    def exact(cls, value: int) -> "BigReal":
        return cls(int(value), 0, None, None)

    @classmethod
    def from_fraction(cls, q: Fraction, digits: int) -> "BigReal":
        q = Fraction(q)
        if q.denominator & (q.denominator - 1) == 0:
            # exact, but keeps the precision tag so later division can round
            return cls(q.numerator, -(q.denominator.bit_length() - 1), None, digits)
        bits = working_bits(digits)
        man = _round_div(q.numerator << bits, q.denominator)
        return cls(man, -bits, -bits - 1, digits)

    @classmethod
    def from_decimal(cls, text: str, exp: int, err: Optional[int], digits: Optional[int]) -> "BigReal":
        """Rebuild a value from its exact decimal expansion at binary exponent ``exp``."""
        q = Fraction(text)
        scaled = q * (Fraction(2) ** -exp)
        if scaled.denominator != 1:
            man = _round_div(scaled.numerator, scaled.denominator)
        else:
            man = scaled.numerator
        return cls(man, exp, err, digits)

    @property
    def abs_error_bound(self) -> Fraction:
        if self.err is None:
            return Fraction(0)
        return Fraction(2) ** self.err

    # helpers
    def _prec_digits(self, other: Optional["BigReal"] = None) -> Optional[int]:
        ds = [d for d in (self.digits, other.digits if other is not None else None) if d is not None]
        return min(ds) if ds else None

    @staticmethod
    def _rounded(man: int, exp: int, err: Optional[int], digits: Optional[int]) -> "BigReal":
        if digits is None:
            return BigReal(man, exp, err, None)
        floor_exp = -working_bits(digits) - 8
        if exp >= floor_exp:
            return BigReal(man, exp, err, digits)
        shift = floor_exp - exp
        man = _round_shift(man, shift)
        return BigReal(man, floor_exp, _err_sum(err, floor_exp - 1), digits)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        e = min(self.exp, other.exp)
        man = (self.man << (self.exp - e)) + (other.man << (other.exp - e))
        return self._rounded(man, e, _err_sum(self.err, other.err), self._prec_digits(other))

    __radd__ = __add__

    def __neg__(self):
        return BigReal(-self.man, self.exp, self.err, self.digits)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Fraction) and other.denominator != 1:
            return (self * other.numerator) / other.denominator
        other = _coerce(other)
        if other is None:
            return NotImplemented
        man = self.man * other.man
        exp = self.exp + other.exp
        err_terms = []
        if other.err is not None:
            err_terms.append(_magnitude_exp(self.man, self.exp) + other.err)
        if self.err is not None:
            err_terms.append(_magnitude_exp(other.man, other.exp) + self.err)
        if self.err is not None and other.err is not None:
            err_terms.append(self.err + other.err)
        return self._rounded(man, exp, _err_sum(*err_terms), self._prec_digits(other))

    __rmul__ = __mul__

    def __truediv__(self, n):
        if isinstance(n, Fraction):
            return (self * n.denominator) / n.numerator if n.denominator != 1 else self / n.numerator
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            raise ZeroDivisionError("BigReal division by zero")
        digits = self.digits
        if digits is None:
            if n & (n - 1) == 0 and n > 0:
                return BigReal(self.man, self.exp - (n.bit_length() - 1), None, None)
            raise ValueError("inexact division of an exact BigReal needs a precision; use from_fraction")
        bits = working_bits(digits) + 8
        target = -bits
        shift = self.exp - target
        num = self.man << shift if shift >= 0 else self.man
        exp = target if shift >= 0 else self.exp
        man = _round_div(num, n)
        err = None
        if self.err is not None:
            err = self.err - (abs(n).bit_length() - 1)
        return BigReal(man, exp, _err_sum(err, exp - 1), digits)

    def __abs__(self):
        return BigReal(abs(self.man), self.exp, self.err, self.digits)

    # comparison and conversion
    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigReal):
            return NotImplemented
        return self.to_fraction() == other.to_fraction() and self.err == other.err

    def __hash__(self):
        return hash((self.to_fraction(), self.err))

    def same_bits(self, other: "BigReal") -> bool:
        return (self.man, self.exp, self.err, self.digits) == (other.man, other.exp, other.err, other.digits)

    def abs_diff(self, other) -> Fraction:
        return abs(self.to_fraction() - _coerce(other).to_fraction())

    def exact_decimal(self) -> str:
        """Exact decimal expansion of the dyadic value (finite)."""
        if self.exp >= 0:
            return str(self.man << self.exp)
        n = -self.exp
        scaled = abs(self.man) * 5 ** n  # value * 10**n
        s = str(scaled).rjust(n + 1, "0")
        body = s[:-n] + "." + s[-n:]
        body = body.rstrip("0").rstrip(".")
        return ("-" if self.man < 0 else "") + body

    def to_string(self, places: Optional[int] = None) -> str:
        """Decimal string rounded to ``places`` digits after the point."""
        if places is None:
            places = self.digits if self.digits is not None else 30
        q = self.to_fraction() * 10 ** places
        n = _round_div(q.numerator, q.denominator)
        sign = "-" if n < 0 else ""
        s = str(abs(n)).rjust(places + 1, "0")
        if places == 0:
            return sign + s
        return f"{sign}{s[:-places]}.{s[-places:]}"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BigReal({self.to_string()}, err=2^{self.err}, digits={self.digits})"


def _coerce(x) -> Optional[BigReal]:
    if isinstance(x, BigReal):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return BigReal.exact(x)
    if isinstance(x, Fraction) and x.denominator & (x.denominator - 1) == 0:
        return BigReal(x.numerator, -(x.denominator.bit_length() - 1))
    return None


def _round_div(a: int, b: int) -> int:
    """``a / b`` rounded to nearest (ties away from zero)."""
    if b < 0:
        a, b = -a, -b
    q, r = divmod(abs(a), b)
    if 2 * r >= b:
        q += 1
    return q if a >= 0 else -q


def _round_shift(man: int, shift: int) -> int:
    if shift <= 0:
        return man << -shift
    return _round_div(man, 1 << shift)
