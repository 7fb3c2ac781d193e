from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest
from hypothesis import given, strategies as st

from mzvkit import BigReal, DomainError, Index, eval_mzv, eval_star, ones
from mzvkit.series import (
    PowerSeries1,
    PowerSeries2,
    build_exp_even_zeta,
    build_exp_triple_zeta,
    build_gamma_genfunc,
    build_rhs_thm3,
    build_star_twos,
    build_T_series,
    build_threes,
    height_one_index,
    ps_exp,
    ps_mul,
)

TOL = Fraction(1, 10 ** 25)
small = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=8), min_size=6, max_size=6)


def _close(a, b, tol=TOL):
    return a.abs_diff(b) <= tol


@given(small, small)
def test_mul_matches_naive_convolution(a, b):
    A = PowerSeries1([BigReal.from_fraction(x, 30) for x in a])
    B = PowerSeries1([BigReal.from_fraction(x, 30) for x in b])
    C = ps_mul(A, B)
    for n in range(6):
        want = sum(a[i] * b[n - i] for i in range(n + 1))
        assert abs(C[n].to_fraction() - want) <= C[n].abs_error_bound


def test_exp_of_x_is_factorials():
    e = ps_exp(PowerSeries1([0, 1, 0, 0, 0, 0, 0]), 30)
    for n in range(7):
        assert abs(e[n].to_fraction() - Fraction(1, factorial(n))) <= e[n].abs_error_bound + Fraction(1, 10 ** 35)


def test_bivariate_exp_of_x_plus_y():
    e = ps_exp(PowerSeries2({(1, 0): 1, (0, 1): 1}, 5), 30)
    for i in range(6):
        for j in range(6 - i):
            want = Fraction(comb(i + j, i), factorial(i + j))
            assert abs(e[(i, j)].to_fraction() - want) < Fraction(1, 10 ** 30)


def test_order_checks():
    with pytest.raises(DomainError):
        PowerSeries1([1, 2]) + PowerSeries1([1, 2, 3])
    with pytest.raises(DomainError):
        ps_exp(PowerSeries1([1, 1]))
    with pytest.raises(DomainError):
        build_T_series(1)


def test_exponential_forms_of_star_twos_and_threes():
    # complete and elementary symmetric functions of 1/m^2 and 1/m^3
    n = 12
    for x, y in zip(build_exp_even_zeta(n).coeffs, build_star_twos(n).coeffs):
        assert _close(x, y)
    for x, y in zip(build_exp_triple_zeta(n).coeffs, build_threes(n).coeffs):
        assert _close(x, y)


def test_T_spot_values():
    mpmath.mp.dps = 40
    T = build_T_series(6)
    z = lambda k: eval_mzv((k,), 30)
    assert abs(float(T[4].to_fraction()) - float(7 * mpmath.pi ** 4 / 360)) < 1e-15
    assert _close(T[5], z(2) * z(3))
    assert T[1].to_fraction() == 0 and T[0].to_fraction() == 1
    # T(2) = ζ(2), T(3) = ζ(3)
    assert _close(T[2], z(2)) and _close(T[3], z(3))


def test_rhs_low_coefficients():
    R = build_rhs_thm3(6)
    assert _close(R[2], eval_star((2,), 30))
    assert _close(R[5], eval_star((2,), 30) * eval_mzv((3,), 30))


def test_genfunc_coefficients():
    G = build_gamma_genfunc(6)
    assert G[(0, 0)].to_fraction() == 1
    for d in range(1, 7):
        assert G[(d, 0)].to_fraction() == 0 and G[(0, d)].to_fraction() == 0
    for r in range(1, 6):
        for k in range(1, 7 - r):
            assert _close(G[(r, k)], -eval_mzv(height_one_index(r, k), 30))


def test_height_one_index():
    assert height_one_index(3, 2) == Index((1, 1, 3))
    assert height_one_index(1, 1) == Index((2,))
