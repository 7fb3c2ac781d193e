"""Identity checks for height-one and maximal-height multiple zeta values.

Every check returns a :class:`Report` carrying both sides, so a failed run
can be diagnosed from its JSON alone. Numeric checks compare at a tolerance
of ``10**-(digits-5)`` unless told otherwise; symbolic checks compare exact
IndexSums and never touch the numerics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .bigreal import BigReal
from .index import Index, IndexSum, add_pointwise, dual, enumerate_indices, ones, stuffle
from .linear import DomainError
from .numerics import MZVCache, const, eval_index_sum, eval_mzv, log_int, nested_partial_sum
from .regularization import RegPoly, reg_constant_term, rebase, shuffle_regularize, stuffle_regularize
from .series import build_gamma_genfunc, build_rhs_thm3, build_T_series, height_one_index
from .words import Word, index_to_word, shuffle, word_to_index

__all__ = [
    "Report",
    "default_tolerance",
    "thm1_rhs",
    "verify_thm1",
    "verify_thm2",
    "verify_regpoly_sum",
    "verify_thm3",
    "verify_genfunc",
    "verify_genfunc_symmetry",
    "s_term",
    "stuffle_expansion_lhs",
    "stuffle_expansion_rhs",
    "verify_stuffle_expansion",
    "verify_stuffle_collapse",
    "verify_binomial_identities",
    "verify_double_shuffle",
    "verify_duality",
    "verify_stuffle_asymptotic",
]

Value = Union[BigReal, str, int]


def default_tolerance(digits: int) -> Fraction:
    return Fraction(1, 10 ** (digits - 5))


@dataclass
class Report:
    identity: str
    params: dict
    lhs: Union[Value, List[Value]]
    rhs: Union[Value, List[Value]]
    abs_error: Union[Fraction, List[Fraction]]
    tolerance: Fraction
    passed: bool
    millis: float = 0.0
    slots: Optional[List] = None
    places: int = 35
    symbolic: bool = False

    @property
    def is_list(self) -> bool:
        return isinstance(self.lhs, list)

    def rows(self) -> Iterator[Tuple[object, Value, Value, Fraction]]:
        if self.is_list:
            slots = self.slots or list(range(len(self.lhs)))
            yield from zip(slots, self.lhs, self.rhs, self.abs_error)
        else:
            yield None, self.lhs, self.rhs, self.abs_error

    def _fmt(self, v: Value) -> str:
        if isinstance(v, BigReal):
            return v.to_string(self.places)
        return str(v)

    def to_json(self) -> dict:
        def fmt_side(side):
            return [self._fmt(v) for v in side] if isinstance(side, list) else self._fmt(side)

        params = dict(self.params)
        if self.slots is not None:
            params["slots"] = [list(s) if isinstance(s, tuple) else s for s in self.slots]
        err = [_fmt_err(e) for e in self.abs_error] if isinstance(self.abs_error, list) else _fmt_err(self.abs_error)
        return {
            "identity": self.identity,
            "params": params,
            "lhs": fmt_side(self.lhs),
            "rhs": fmt_side(self.rhs),
            "abs_error": err,
            "tolerance": _fmt_err(self.tolerance),
            "pass": self.passed,
            "millis": round(self.millis, 3),
        }


def _fmt_err(e: Fraction) -> str:
    e = Fraction(e)
    if e == 0:
        return "0"
    return f"{float(e):.3e}"


def _numeric_report(identity, params, lhs, rhs, tol, t0, digits, slots=None) -> Report:
    if isinstance(lhs, list):
        errs = [a.abs_diff(b) for a, b in zip(lhs, rhs)]
        ok = all(e <= tol for e in errs)
    else:
        errs = lhs.abs_diff(rhs)
        ok = errs <= tol
    return Report(
        identity, params, lhs, rhs, errs, tol, ok,
        millis=(time.perf_counter() - t0) * 1e3, slots=slots, places=digits + 5,
    )


def _symbolic_report(identity, params, lhs, rhs, t0, slots=None) -> Report:
    if isinstance(lhs, list):
        errs = [_sym_dist(a, b) for a, b in zip(lhs, rhs)]
        ok = all(e == 0 for e in errs)
        lhs_v = [_sym_str(a) for a in lhs]
        rhs_v = [_sym_str(b) for b in rhs]
    else:
        errs = _sym_dist(lhs, rhs)
        ok = errs == 0
        lhs_v, rhs_v = _sym_str(lhs), _sym_str(rhs)
    return Report(
        identity, params, lhs_v, rhs_v, errs, Fraction(0), ok,
        millis=(time.perf_counter() - t0) * 1e3, slots=slots, symbolic=True,
    )


def _sym_dist(a, b) -> Fraction:
    if isinstance(a, IndexSum):
        return a.l1_distance(b)
    return Fraction(abs(Fraction(a) - Fraction(b)))


def _sym_str(a) -> str:
    return a.render() if isinstance(a, IndexSum) else str(a)


def _check_rk(r: int, k: int) -> None:
    if r < 1 or k < 1:
        raise DomainError(f"need r, k >= 1, got r={r}, k={k}")


# ---------------------------------------------------------------------------
# the explicit formula for height-one values


def thm1_rhs(r: int, k: int) -> IndexSum:
    """``sum_j (-1)^(j-1) sum_{wt a=k, wt b=r, dep a=dep b=j} [a+b]`` as an exact IndexSum."""
    _check_rk(r, k)
    acc: Dict[Index, int] = {}
    for j in range(1, min(r, k) + 1):
        sign = 1 if j % 2 else -1
        bs = enumerate_indices(r, j, 1)
        for a in enumerate_indices(k, j, 1):
            for b in bs:
                s = add_pointwise(a, b)
                acc[s] = acc.get(s, 0) + sign
    return IndexSum._from_dict(acc)


def verify_thm1(r: int, k: int, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    _check_rk(r, k)
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    lhs = eval_mzv(height_one_index(r, k), digits, cache)
    rhs = eval_index_sum(thm1_rhs(r, k), digits, cache)
    return _numeric_report("thm1", {"r": r, "k": k, "digits": digits}, lhs, rhs, tol, t0, digits)


# ---------------------------------------------------------------------------
# shuffle-regularized sum formulas


def _regularized_sum(r: int, k: int) -> RegPoly:
    total = RegPoly()
    for idx in enumerate_indices(r + k, r, 1):
        total = total + shuffle_regularize(index_to_word(idx))
    return total


def verify_thm2(r: int, k: int, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    _check_rk(r, k)
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    lhs = eval_index_sum(reg_constant_term(_regularized_sum(r, k)), digits, cache)
    rhs = eval_mzv(height_one_index(r, k), digits, cache)
    if r % 2 == 0:
        rhs = -rhs
    return _numeric_report("thm2", {"r": r, "k": k, "digits": digits}, lhs, rhs, tol, t0, digits)


def verify_regpoly_sum(r: int, k: int, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    _check_rk(r, k)
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    poly = _regularized_sum(r, k)
    n = max(r, poly.degree + 1)
    lhs, rhs = [], []
    for i in range(n):
        lhs.append(eval_index_sum(poly.coeff(i), digits, cache))
        if i < r:
            v = eval_mzv(height_one_index(r - i, k), digits, cache) / factorial(i)
            rhs.append(v if (r - 1 - i) % 2 == 0 else -v)
        else:
            rhs.append(BigReal.exact(0))
    slots = [f"T^{i}" for i in range(n)]
    return _numeric_report("regpoly-sum", {"r": r, "k": k, "digits": digits}, lhs, rhs, tol, t0, digits, slots)


# ---------------------------------------------------------------------------
# generating series


def verify_thm3(maxweight: int, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    if maxweight < 2:
        raise DomainError("maxweight must be at least 2")
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    left = build_T_series(maxweight, digits, cache)
    right = build_rhs_thm3(maxweight, digits, cache)
    ks = list(range(2, maxweight + 1))
    return _numeric_report(
        "thm3", {"maxweight": maxweight, "digits": digits},
        [left[k] for k in ks], [right[k] for k in ks], tol, t0, digits, [f"x^{k}" for k in ks],
    )


def verify_genfunc(maxdeg: int, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    if maxdeg < 2:
        raise DomainError("maxdeg must be at least 2")
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    g = build_gamma_genfunc(maxdeg, digits, cache)
    slots, lhs, rhs = [], [], []
    for d in range(1, maxdeg + 1):
        for i in range(d, -1, -1):
            j = d - i
            slots.append((i, j))
            lhs.append(g[(i, j)])
            if i >= 1 and j >= 1:
                rhs.append(-eval_mzv(height_one_index(i, j), digits, cache))
            else:
                rhs.append(BigReal.exact(0))
    return _numeric_report("genfunc", {"maxdeg": maxdeg, "digits": digits}, lhs, rhs, tol, t0, digits, slots)


def verify_genfunc_symmetry(maxdeg: int, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    g = build_gamma_genfunc(maxdeg, digits, cache)
    slots, lhs, rhs = [], [], []
    for d in range(2, maxdeg + 1):
        for j in range(0, (d + 1) // 2):
            i = d - j
            slots.append((i, j))
            lhs.append(g[(i, j)])
            rhs.append(g[(j, i)])
    return _numeric_report("genfunc-symmetry", {"maxdeg": maxdeg, "digits": digits}, lhs, rhs, tol, t0, digits, slots)


# ---------------------------------------------------------------------------
# the stuffle bookkeeping inside the proof of the explicit formula


def _insert_ones(entries: Tuple[int, ...], l: int) -> Iterator[Tuple[int, ...]]:
    n = len(entries) + l
    for pos in combinations(range(n), l):
        it = iter(entries)
        ps = set(pos)
        yield tuple(1 if p in ps else next(it) for p in range(n))


def s_term(a, l: int, n: int, r: int) -> IndexSum:
    """Sum over ``b`` of weight ``r-l``, depth ``dep(a)``, height ``n`` and over
    all placements of ``l`` extra 1's of ``[..., a_s + b_s, ..., 1, ...]``."""
    a = Index(a)
    j = len(a)
    acc: Dict[Tuple[int, ...], int] = {}
    for b in enumerate_indices(r - l, j, 1):
        if b.height != n:
            continue
        base = tuple(add_pointwise(a, b))
        for t in _insert_ones(base, l):
            acc[t] = acc.get(t, 0) + 1
    return IndexSum((Index._trusted(t), c) for t, c in acc.items())


def stuffle_expansion_lhs(a, i: int, r: int) -> IndexSum:
    a = Index(a)
    total = IndexSum.zero()
    for b in enumerate_indices(r - i - 1, len(a), 1):
        total = total + stuffle(add_pointwise(a, b), ones(i + 1))
    return total


def stuffle_expansion_rhs(a, i: int, r: int) -> IndexSum:
    a = Index(a)
    j = len(a)
    total = IndexSum.zero()
    for l in range(max(0, i + 1 - j), i + 2):
        for n in range(i + 1 - l, j + 1):
            total = total + s_term(a, l, n, r).scale(comb(n, i + 1 - l))
    return total


def _check_expansion_range(a: Index, r: int, i: Optional[int] = None) -> None:
    j = len(a)
    if j < 1:
        raise DomainError("a must be nonempty")
    if r - j - 1 < 0:
        raise DomainError(f"need r >= depth(a) + 1, got r={r}, depth={j}")
    if i is not None and not 0 <= i <= r - j - 1:
        raise DomainError(f"need 0 <= i <= r - depth(a) - 1 = {r - j - 1}, got {i}")


def verify_stuffle_expansion(a, i: int, r: int) -> Report:
    a = Index(a)
    _check_expansion_range(a, r, i)
    t0 = time.perf_counter()
    lhs = stuffle_expansion_lhs(a, i, r)
    rhs = stuffle_expansion_rhs(a, i, r)
    return _symbolic_report("stuffle-expansion", {"a": list(a), "i": i, "r": r}, lhs, rhs, t0)


def verify_stuffle_collapse(a, r: int) -> Report:
    """Alternating sum over ``i`` collapses to ``sum_n S(a,0,n) + (-1)^(r-j-1) S(a,r-j,0)``."""
    a = Index(a)
    _check_expansion_range(a, r)
    t0 = time.perf_counter()
    j = len(a)
    lhs = IndexSum.zero()
    for i in range(r - j):
        term = stuffle_expansion_lhs(a, i, r)
        lhs = lhs + (term if i % 2 == 0 else -term)
    rhs = IndexSum.zero()
    for n in range(1, j + 1):
        rhs = rhs + s_term(a, 0, n, r)
    last = s_term(a, r - j, 0, r)
    rhs = rhs + (last if (r - j - 1) % 2 == 0 else -last)
    return _symbolic_report("stuffle-collapse", {"a": list(a), "r": r}, lhs, rhs, t0)


def verify_binomial_identities(nmax: int = 6, lmax: int = 6) -> Report:
    """``sum_{i=l-1}^{n+l-1} (-1)^i C(n, i+1-l) = 0`` for ``n, l >= 1`` and
    ``sum_{i=0}^{n-1} (-1)^i C(n, i+1) = 1`` for ``n >= 1``."""
    t0 = time.perf_counter()
    slots, lhs, rhs = [], [], []
    for n in range(1, nmax + 1):
        for l in range(1, lmax + 1):
            slots.append(f"n={n},l={l}")
            lhs.append(sum((-1) ** i * comb(n, i + 1 - l) for i in range(l - 1, n + l)))
            rhs.append(0)
        slots.append(f"n={n},l=0")
        lhs.append(sum((-1) ** i * comb(n, i + 1) for i in range(n)))
        rhs.append(1)
    return _symbolic_report("binomial", {"nmax": nmax, "lmax": lmax}, lhs, rhs, t0, slots)


# ---------------------------------------------------------------------------
# product and duality consistency


def _word_or_empty(k: Index) -> Word:
    return index_to_word(k) if k else Word.empty()


def verify_double_shuffle(u, v, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    u, v = Index(u), Index(v)
    for w in (u, v):
        if w and not w.admissible:
            raise DomainError(f"double shuffle needs admissible indices, got {w}")
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    st = stuffle(u, v)
    sh = shuffle(_word_or_empty(u), _word_or_empty(v))
    sh_idx = IndexSum((Index(()) if w.length == 0 else word_to_index(w), c) for w, c in sh.items())
    one = BigReal.exact(1)
    prod = (eval_mzv(u, digits, cache) if u else one) * (eval_mzv(v, digits, cache) if v else one)
    lhs = [eval_index_sum(st, digits, cache), eval_index_sum(sh_idx, digits, cache)]
    return _numeric_report(
        "double-shuffle", {"u": list(u), "v": list(v), "digits": digits},
        lhs, [prod, prod], tol, t0, digits, ["stuffle", "shuffle"],
    )


def verify_duality(k, digits: int = 30, tolerance=None, cache: Optional[MZVCache] = None) -> Report:
    k = Index(k)
    t0 = time.perf_counter()
    tol = default_tolerance(digits) if tolerance is None else Fraction(tolerance)
    d = dual(k)
    return _numeric_report(
        "duality", {"index": list(k), "dual": list(d), "digits": digits},
        eval_mzv(k, digits, cache), eval_mzv(d, digits, cache), tol, t0, digits,
    )


def verify_stuffle_asymptotic(k=(2, 1), limits: Sequence[int] = (10**3, 10**4), digits: int = 30,
                              min_ratio: int = 5) -> Report:
    """Truncated sums of a divergent index against its stuffle-regularized
    polynomial at ``T = log M + γ``.

    The gap must shrink by ``min_ratio`` between consecutive limits;
    ``tolerance`` is the bound this puts on the last gap.
    """
    k = Index(k)
    limits = sorted(limits)
    if len(limits) < 2:
        raise DomainError("need at least two truncation limits")
    t0 = time.perf_counter()
    poly = rebase(stuffle_regularize(k), 0, digits)
    gamma = const("gamma", digits)
    lhs = [nested_partial_sum(k, m, digits) for m in limits]
    rhs = [poly(log_int(m, digits) + gamma) for m in limits]
    errs = [a.abs_diff(b) for a, b in zip(lhs, rhs)]
    ok = all(b * min_ratio <= a for a, b in zip(errs, errs[1:]))
    tol = errs[-2] / min_ratio
    return Report(
        "stuffle-asymptotic", {"index": list(k), "digits": digits, "min_ratio": min_ratio},
        lhs, rhs, errs, tol, ok,
        millis=(time.perf_counter() - t0) * 1e3, slots=[f"M={m}" for m in limits], places=digits + 5,
    )
