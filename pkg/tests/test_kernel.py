from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mzvkit import kernel
from mzvkit._lisum_py import nested_sum_half as py_sum
from mzvkit.numerics import _rounding_ulps

parts = st.lists(st.integers(1, 6), min_size=1, max_size=5).map(tuple)


def _exact(parts, n):
    # sum over 0 < m_1 < ... < m_r <= n of 2^-m_r / prod m_i^p_i
    r = len(parts)
    heads = [Fraction(1)] + [Fraction(0)] * r
    total = Fraction(0)
    for m in range(1, n + 1):
        total += heads[r - 1] / (Fraction(m) ** parts[-1] * 2 ** m)
        for j in range(r - 1, 0, -1):
            heads[j] += heads[j - 1] / Fraction(m) ** parts[j - 1]
    return total


def test_backend_selected():
    assert kernel.BACKEND in ("gmp", "python")
    assert kernel.python_nested_sum_half is py_sum


@given(parts, st.integers(1, 150), st.integers(8, 400))
def test_backends_agree_bit_for_bit(p, n, bits):
    assert kernel.nested_sum_half(p, n, bits) == py_sum(p, n, bits)


@given(parts, st.integers(1, 40), st.integers(40, 200))
def test_rounding_within_bound(p, n, bits):
    got = Fraction(py_sum(p, n, bits), 1 << bits)
    assert abs(got - _exact(p, n)) <= Fraction(_rounding_ulps(len(p), n), 1 << bits)


def test_empty_parts_is_one():
    assert py_sum((), 10, 20) == 1 << 20
    assert kernel.nested_sum_half((), 10, 20) == 1 << 20


def test_small_known_value():
    # Li_1(1/2) truncated: sum 2^-m / m
    bits = 64
    assert abs(Fraction(py_sum((1,), 3, bits), 1 << bits) - Fraction(1, 2) - Fraction(1, 8) - Fraction(1, 24)) < Fraction(3, 1 << bits)
