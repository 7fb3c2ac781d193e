from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, strategies as st

from mzvkit import (
    BigReal,
    DomainError,
    Index,
    IndexSum,
    RegPoly,
    Word,
    WordSum,
    eval_index_sum,
    index_to_word,
    rebase,
    reg_constant_term,
    shuffle_regularize,
    stuffle_regularize,
    substitute_shuffle,
    substitute_stuffle,
)
from mzvkit.series import PowerSeries1, ps_exp
from mzvkit.numerics import eval_mzv

from oracles import mp

words_y = st.text(alphabet="xy", max_size=6).map(lambda t: t + "y")
indices = st.lists(st.integers(1, 3), min_size=1, max_size=5).map(Index)


def test_render_examples():
    assert shuffle_regularize("xyy").render() == "ζ(1,2)"
    assert shuffle_regularize(Index((2, 1))).render() == "ζ(2)·T − 2·ζ(1,2)"
    assert shuffle_regularize(Index((1, 1))).render() == "T²/2"
    assert shuffle_regularize(Index((1,))).render() == "T"
    assert stuffle_regularize((2, 1)).render() == "ζ(2)·T − ζ(1,2) − ζ(3)"
    assert stuffle_regularize((1,)).render() == "T"


@pytest.mark.parametrize("n", range(1, 7))
def test_all_ones(n):
    p = shuffle_regularize(Index((1,) * n))
    assert p.degree == n
    assert p.coeff(n) == IndexSum.monomial(Index(()), Fraction(1, factorial(n)))
    assert all(p.coeff(i) == 0 for i in range(n))


def test_domain_errors():
    with pytest.raises(DomainError):
        shuffle_regularize("xyx")
    with pytest.raises(DomainError):
        stuffle_regularize(())


@given(words_y)
def test_shuffle_reconstruction(t):
    w = Word.parse(t)
    p = shuffle_regularize(w)
    assert substitute_shuffle(p) == WordSum.monomial(w)
    assert p.degree == w.leading_ys()
    for c in p.coeffs:
        assert all(not k or k.admissible for k in c)


@given(indices)
def test_stuffle_reconstruction(k):
    p = stuffle_regularize(k)
    assert substitute_stuffle(p) == IndexSum.monomial(k)
    assert p.degree == k.trailing_ones()
    for c in p.coeffs:
        assert all(not i or i.admissible for i in c)


@given(indices)
def test_admissible_is_constant(k):
    if k.admissible:
        p = shuffle_regularize(k)
        assert p.degree == 0 and reg_constant_term(p) == IndexSum.monomial(k)


@given(words_y)
def test_json_round_trip(t):
    p = shuffle_regularize(t)
    assert RegPoly.from_json(p.to_json()) == p


def test_regularized_value_spot():
    # constant term of the shuffle-regularized (2,1)
    v = eval_index_sum(reg_constant_term(shuffle_regularize(Index((2, 1)))), 30)
    assert v.abs_diff(eval_mzv((3,), 30) * -2) < Fraction(1, 10 ** 28)


def _rho(coeffs, digits=30):
    # T^n -> n! [u^n] A(u) e^(Tu), A(u) = exp(sum_{n>=2} (-1)^n ζ(n) u^n / n)
    n = len(coeffs) - 1
    a = [BigReal.exact(0)] * (n + 1)
    for j in range(2, n + 1):
        z = eval_mzv((j,), digits) / j
        a[j] = z if j % 2 == 0 else -z
    A = ps_exp(PowerSeries1(a), digits).coeffs
    out = [BigReal.exact(0)] * (n + 1)
    for m, c in enumerate(coeffs):
        for j in range(m + 1):
            out[m - j] = out[m - j] + c * A[j] * Fraction(factorial(m), factorial(m - j))
    return out


@pytest.mark.parametrize("k", [(1, 1), (2, 1), (2, 1, 1), (1, 2, 1), (3, 1, 1), (2, 1, 1, 1), (2, 2, 1)])
def test_comparison_map_links_both_regularizations(k):
    star = [eval_index_sum(c, 30) for c in stuffle_regularize(k).coeffs]
    sh = [eval_index_sum(c, 30) for c in shuffle_regularize(Index(k)).coeffs]
    for x, y in zip(_rho(star), sh):
        assert x.abs_diff(y) < Fraction(1, 10 ** 26)


def test_rebase_preserves_values():
    p = shuffle_regularize(Index((2, 1, 1)))
    shifted = rebase(p, "gamma", 30)
    plain = rebase(p, 0, 30)
    t = BigReal.from_fraction(Fraction(7, 3), 30)
    assert shifted(t).abs_diff(plain(t)) < Fraction(1, 10 ** 26)
    mpmath.mp.dps = 40
    g = mpmath.euler
    vals = [mp(eval_index_sum(c, 30)) for c in p.coeffs]
    expect = sum(v * (mpmath.mpf(7) / 3) ** i for i, v in enumerate(vals))
    assert abs(mp(shifted(t)) - expect) < mpmath.mpf(10) ** -26
    # b_j = j! * coefficient of (T - γ)^j = j-th derivative at γ
    b = shifted.derivative_coefficients()
    assert len(b) == 3
    d0 = sum(v * g ** i for i, v in enumerate(vals))
    assert abs(mp(b[0]) - d0) < mpmath.mpf(10) ** -26
