from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mzvkit import BigReal
from mzvkit.bigreal import decimal_bits, working_bits

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6)
digits = st.integers(8, 60)


def _contains(x: BigReal, q: Fraction) -> bool:
    return abs(x.to_fraction() - q) <= x.abs_error_bound


def test_bits():
    assert decimal_bits(30) == 100
    assert working_bits(30) == 132
    assert Fraction(2) ** -decimal_bits(30) <= Fraction(1, 10 ** 30)


@given(fracs, digits)
def test_from_fraction_bound(q, d):
    x = BigReal.from_fraction(q, d)
    assert _contains(x, q)
    assert x.abs_error_bound <= Fraction(1, 10 ** d)


@given(fracs, fracs, digits)
def test_arithmetic_keeps_true_value_inside_bound(a, b, d):
    x, y = BigReal.from_fraction(a, d), BigReal.from_fraction(b, d)
    assert _contains(x + y, a + b)
    assert _contains(x - y, a - b)
    assert _contains(x * y, a * b)
    assert _contains(x * Fraction(3, 7), a * Fraction(3, 7))
    assert _contains(x / 3, a / 3)
    assert _contains(-x, -a)
    assert _contains(abs(x), abs(a))


def test_exact_values():
    one = BigReal.exact(1)
    assert one.err is None and one.abs_error_bound == 0
    assert (one / 4).to_fraction() == Fraction(1, 4)
    with pytest.raises(ValueError):
        one / 3
    with pytest.raises(ZeroDivisionError):
        BigReal.from_fraction(Fraction(1, 3), 10) / 0
    assert BigReal.from_fraction(Fraction(3, 8), 10).err is None
    assert (BigReal.from_fraction(Fraction(0), 10) / 3).to_fraction() == 0


def test_decimal_output():
    x = BigReal.from_fraction(Fraction(1, 3), 20)
    assert x.to_string(10) == "0.3333333333"
    assert BigReal.from_fraction(Fraction(-2, 3), 20).to_string(5) == "-0.66667"
    assert BigReal.exact(5).to_string(0) == "5"
    assert BigReal(3, -3).exact_decimal() == "0.375"


@given(fracs, digits)
def test_exact_decimal_round_trip(q, d):
    x = BigReal.from_fraction(q, d)
    y = BigReal.from_decimal(x.exact_decimal(), x.exp, x.err, x.digits)
    assert y.same_bits(x)
