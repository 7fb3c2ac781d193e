"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a one-line verdict that conftest prints in the terminal
summary, so ``pytest tests/test_acceptance.py`` reads as a checklist.
"""

import random
import time
from fractions import Fraction

import mpmath
import pytest

from conftest import ACCEPTANCE
from mzvkit import (
    Index,
    IndexSum,
    MZVCache,
    WordSum,
    dual,
    enumerate_indices,
    eval_index_sum,
    eval_mzv,
    eval_mzv_direct,
    index_to_word,
    reg_constant_term,
    shuffle,
    shuffle_regularize,
    stuffle,
    stuffle_regularize,
    substitute_shuffle,
    substitute_stuffle,
)
from mzvkit.series import build_T_series
from mzvkit.verify import (
    verify_binomial_identities,
    verify_double_shuffle,
    verify_genfunc,
    verify_genfunc_symmetry,
    verify_regpoly_sum,
    verify_stuffle_asymptotic,
    verify_stuffle_collapse,
    verify_stuffle_expansion,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)

from oracles import mp

DIGITS = 30
TOL = Fraction(1, 10 ** 25)


def record(num, ok, detail):
    ACCEPTANCE[num] = (bool(ok), detail)
    return ok


def rk_pairs(max_sum):
    return [(r, k) for r in range(1, max_sum) for k in range(1, max_sum - r + 1)]


def worst(reports):
    errs = []
    for rep in reports:
        errs.extend(rep.abs_error if isinstance(rep.abs_error, list) else [rep.abs_error])
    return max(errs)


@pytest.fixture
def mp40():
    mpmath.mp.dps = 40
    yield
    mpmath.mp.dps = 15


def test_criterion_1_height_one_formula(mp40):
    cache = MZVCache()
    t0 = time.perf_counter()
    reps = [verify_thm1(r, k, DIGITS, TOL, cache) for r, k in rk_pairs(12)]
    elapsed = time.perf_counter() - t0
    z13 = abs(mp(eval_mzv((1, 3), DIGITS, cache)) - mpmath.pi ** 4 / 360)
    ok = all(r.passed for r in reps) and elapsed <= 300 and z13 <= mpmath.mpf(10) ** -25
    record(1, ok, f"{len(reps)} (r,k) pairs, max residual {float(worst(reps)):.2e}, "
                  f"{elapsed:.2f} s, |ζ(1,3) - π⁴/360| = {float(z13):.1e}")
    assert len(reps) == 66 and ok


def test_criterion_2_regularized_height_one_sum():
    reps = [verify_thm2(r, k, DIGITS, TOL) for r, k in rk_pairs(10)]
    v = eval_index_sum(reg_constant_term(shuffle_regularize(Index((2, 1)))), DIGITS)
    spot = v.abs_diff(eval_mzv((3,), DIGITS) * -2)
    ok = all(r.passed for r in reps) and spot <= TOL
    record(2, ok, f"{len(reps)} pairs, max residual {float(worst(reps)):.2e}, "
                  f"|ζ^⧢(2,1) + 2ζ(3)| = {float(spot):.1e}")
    assert ok


def test_criterion_3_regularized_polynomial_sum():
    reps = [verify_regpoly_sum(r, k, DIGITS, TOL) for r, k in rk_pairs(10)]
    slots = sum(len(r.slots) for r in reps)
    ok = all(r.passed for r in reps)
    record(3, ok, f"{len(reps)} pairs, {slots} coefficients, max residual {float(worst(reps)):.2e}")
    assert ok


def test_criterion_4_generating_series(mp40):
    rep = verify_thm3(12, DIGITS, TOL)
    T = build_T_series(5, DIGITS)
    e4 = abs(mp(T[4]) - 7 * mpmath.pi ** 4 / 360)
    e5 = abs(mp(T[5]) - mpmath.zeta(2) * mpmath.zeta(3))
    lim = mpmath.mpf(10) ** -25
    ok = rep.passed and len(rep.slots) == 11 and e4 <= lim and e5 <= lim
    record(4, ok, f"weights 2..12, max residual {float(worst([rep])):.2e}, "
                  f"T(4) err {float(e4):.1e}, T(5) err {float(e5):.1e}")
    assert ok


def test_criterion_5_symmetric_generating_function():
    g = verify_genfunc(10, DIGITS, TOL)
    s = verify_genfunc_symmetry(10, DIGITS, TOL)
    ok = g.passed and s.passed
    record(5, ok, f"{len(g.slots)} coefficients to degree 10, max residual {float(worst([g])):.2e}, "
                  f"symmetry {float(worst([s])):.2e}")
    assert ok


def test_criterion_6_exact_algebra():
    checks = {}
    all_idx = [k for w in range(1, 10) for k in enumerate_indices(w)]
    checks["reconstruction"] = all(
        substitute_shuffle(shuffle_regularize(k)) == WordSum.monomial(index_to_word(k))
        and substitute_stuffle(stuffle_regularize(k)) == IndexSum.monomial(k)
        for k in all_idx
    )
    adm = [k for w in range(2, 13) for k in enumerate_indices(w) if k.admissible]
    checks["duality"] = all(dual(dual(k)) == k and dual(k).weight == k.weight for k in adm)

    rng = random.Random(20261014)

    def rand_index():
        return Index(rng.randint(1, 3) for _ in range(rng.randint(0, 3)))

    ok_alg = True
    for _ in range(40):
        u, v, w = rand_index(), rand_index(), rand_index()
        ok_alg &= stuffle(u, v) == stuffle(v, u)
        left = sum((stuffle(x, w).scale(c) for x, c in stuffle(u, v).items()), IndexSum.zero())
        right = sum((stuffle(u, x).scale(c) for x, c in stuffle(v, w).items()), IndexSum.zero())
        ok_alg &= left == right
        a, b, c = (str(index_to_word(x)) if x else "" for x in (u, v, w))
        ok_alg &= shuffle(a, b) == shuffle(b, a)
        left = sum((shuffle(x, c).scale(m) for x, m in shuffle(a, b).items()), WordSum.zero())
        right = sum((shuffle(a, x).scale(m) for x, m in shuffle(b, c).items()), WordSum.zero())
        ok_alg &= left == right
    checks["comm-assoc"] = ok_alg

    n_exp = 0
    ok_exp = True
    for r in range(2, 7):
        for wa in range(1, 5):
            for a in enumerate_indices(wa):
                if len(a) > r - 1:
                    continue
                for i in range(r - len(a)):
                    ok_exp &= verify_stuffle_expansion(a, i, r).passed
                    n_exp += 1
                ok_exp &= verify_stuffle_collapse(a, r).passed
    checks["S-expansion"] = ok_exp
    checks["binomial"] = verify_binomial_identities(6, 6).passed
    ok = all(checks.values())
    record(6, ok, f"{len(all_idx)} reconstructions, {len(adm)} duals, 40 random triples, "
                  f"{n_exp} S-expansions: " + ", ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in checks.items()))
    assert ok


def test_criterion_7_numerics_cross_validation():
    adm8 = [k for w in range(2, 9) for k in enumerate_indices(w) if k.admissible]
    diffs = [eval_mzv_direct(k, 8).abs_diff(eval_mzv(k, DIGITS)) for k in adm8]
    tol7 = Fraction(1, 10 ** 7)
    adm = [k for w in range(2, 8) for k in enumerate_indices(w) if k.admissible]
    pairs = [(u, v) for u in adm for v in adm if u <= v and u.weight + v.weight <= 7]
    ds = [verify_double_shuffle(u, v, DIGITS, TOL) for u, v in pairs]
    ok = max(diffs) <= tol7 and all(r.passed for r in ds)
    record(7, ok, f"{len(adm8)} indices vs direct summation, max diff {float(max(diffs)):.2e}; "
                  f"{len(pairs)} double-shuffle pairs, max residual {float(worst(ds)):.2e}")
    assert ok


def test_criterion_8_stuffle_asymptotic():
    rep = verify_stuffle_asymptotic((2, 1), (10 ** 3, 10 ** 4), DIGITS, 5)
    e1, e2 = rep.abs_error
    record(8, rep.passed, f"errors {float(e1):.3e} (M=10³), {float(e2):.3e} (M=10⁴), ratio {float(e1 / e2):.2f}")
    assert rep.passed
