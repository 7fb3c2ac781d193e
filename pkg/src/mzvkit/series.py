"""Truncated power series over BigReal and the generating functions built from MZVs."""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple, Union

from .bigreal import BigReal
from .index import Index, enumerate_indices, ones
from .linear import DomainError
from .numerics import MZVCache, eval_mzv, eval_star

__all__ = [
    "PowerSeries1",
    "PowerSeries2",
    "ps_mul",
    "ps_exp",
    "build_T_series",
    "build_rhs_thm3",
    "build_gamma_genfunc",
    "build_exp_even_zeta",
    "build_exp_triple_zeta",
    "build_star_twos",
    "build_threes",
]

_ZERO = BigReal.exact(0)
_ONE = BigReal.exact(1)


def _big(c) -> BigReal:
    return c if isinstance(c, BigReal) else BigReal.exact(c)


class PowerSeries1:
    """``c_0 + c_1 x + ... + c_N x^N``, further terms unknown."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        cs = [_big(c) for c in coeffs]
        if order is not None:
            cs = (cs + [_ZERO] * (order + 1))[: order + 1]
        self.coeffs: Tuple[BigReal, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> BigReal:
        return self.coeffs[n]

    def _check(self, other):
        if not isinstance(other, PowerSeries1):
            raise TypeError("expected PowerSeries1")
        if other.order != self.order:
            raise DomainError(f"truncation order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return PowerSeries1([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return PowerSeries1([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, PowerSeries1):
            return ps_mul(self, other)
        return PowerSeries1([c * other for c in self.coeffs])

    def __repr__(self):
        return f"PowerSeries1({[str(c) for c in self.coeffs]})"


class PowerSeries2:
    """Bivariate series ``sum c_(i,j) x^i y^j`` truncated at total degree ``N``."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Dict[Tuple[int, int], object], order: int):
        self.order = order
        self.terms: Dict[Tuple[int, int], BigReal] = {
            (i, j): _big(c) for (i, j), c in terms.items() if i + j <= order
        }

    def __getitem__(self, ij: Tuple[int, int]) -> BigReal:
        return self.terms.get(ij, _ZERO)

    def homogeneous(self, d: int) -> Dict[Tuple[int, int], BigReal]:
        return {(i, d - i): self.terms[(i, d - i)] for i in range(d + 1) if (i, d - i) in self.terms}

    def _check(self, other):
        if not isinstance(other, PowerSeries2):
            raise TypeError("expected PowerSeries2")
        if other.order != self.order:
            raise DomainError(f"truncation order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        keys = set(self.terms) | set(other.terms)
        return PowerSeries2({k: self[k] + other[k] for k in keys}, self.order)

    def __sub__(self, other):
        self._check(other)
        keys = set(self.terms) | set(other.terms)
        return PowerSeries2({k: self[k] - other[k] for k in keys}, self.order)

    def __mul__(self, other):
        if isinstance(other, PowerSeries2):
            return ps_mul(self, other)
        return PowerSeries2({k: c * other for k, c in self.terms.items()}, self.order)

    def __repr__(self):
        return f"PowerSeries2(order={self.order}, terms={len(self.terms)})"


def ps_mul(a, b):
    """Cauchy product, truncated at the common order."""
    a._check(b)
    n = a.order
    if isinstance(a, PowerSeries1):
        out = []
        for d in range(n + 1):
            acc = _ZERO
            for i in range(d + 1):
                acc = acc + a.coeffs[i] * b.coeffs[d - i]
            out.append(acc)
        return PowerSeries1(out)
    acc: Dict[Tuple[int, int], BigReal] = {}
    for (i, j), c in a.terms.items():
        for (k, l), e in b.terms.items():
            if i + j + k + l <= n:
                key = (i + k, j + l)
                acc[key] = acc.get(key, _ZERO) + c * e
    return PowerSeries2(acc, n)


def ps_exp(a, digits: int = 30):
    """``exp(a)`` for a series without constant term.

    Uses the graded recurrence ``d f_d = sum_e e a_e f_(d-e)``, i.e.
    ``E exp(a) = E(a) exp(a)`` with ``E`` the total-degree operator.
    ``digits`` only matters when all coefficients are exact.
    """
    n = a.order
    if isinstance(a, PowerSeries1):
        if a.coeffs[0].to_fraction() != 0:
            raise DomainError("ps_exp needs a vanishing constant term")
        f = [_ONE]
        for d in range(1, n + 1):
            acc = _ZERO
            for e in range(1, d + 1):
                acc = acc + a.coeffs[e] * f[d - e] * e
            f.append(_div(acc, d, digits))
        return PowerSeries1(f)
    if a[(0, 0)].to_fraction() != 0:
        raise DomainError("ps_exp needs a vanishing constant term")
    comps: List[Dict[Tuple[int, int], BigReal]] = [{(0, 0): _ONE}]
    a_h = [a.homogeneous(d) for d in range(n + 1)]
    for d in range(1, n + 1):
        acc: Dict[Tuple[int, int], BigReal] = {}
        for e in range(1, d + 1):
            for (i, j), c in a_h[e].items():
                ce = c * e
                for (k, l), g in comps[d - e].items():
                    key = (i + k, j + l)
                    acc[key] = acc.get(key, _ZERO) + ce * g
        comps.append({k: _div(v, d, digits) for k, v in acc.items()})
    terms: Dict[Tuple[int, int], BigReal] = {}
    for comp in comps:
        terms.update(comp)
    return PowerSeries2(terms, n)


def _div(x: BigReal, d: int, digits: int) -> BigReal:
    if x.digits is not None:
        return x / d
    # exact input such as exp(x): stay exact while the quotient is dyadic
    return BigReal.from_fraction(x.to_fraction() / d, digits)


# ---------------------------------------------------------------------------
# generating functions


def build_T_series(maxweight: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries1:
    """``1 + sum_k T(k) x^k`` with T(k) the sum of weight-k MZVs whose parts are all >= 2."""
    if maxweight < 2:
        raise DomainError("maxweight must be at least 2")
    coeffs = [_ONE, _ZERO]
    for k in range(2, maxweight + 1):
        acc = _ZERO
        for idx in enumerate_indices(k, None, 2):
            acc = acc + eval_mzv(idx, digits, cache)
        coeffs.append(acc)
    return PowerSeries1(coeffs)


def build_star_twos(maxweight: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries1:
    """``1 + sum_n ζ*(2,...,2) x^(2n)``."""
    coeffs = [_ONE] + [_ZERO] * maxweight
    for n in range(1, maxweight // 2 + 1):
        coeffs[2 * n] = eval_star(Index((2,) * n), digits, cache)
    return PowerSeries1(coeffs)


def build_threes(maxweight: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries1:
    """``1 + sum_n ζ(3,...,3) x^(3n)``."""
    coeffs = [_ONE] + [_ZERO] * maxweight
    for n in range(1, maxweight // 3 + 1):
        coeffs[3 * n] = eval_mzv(Index((3,) * n), digits, cache)
    return PowerSeries1(coeffs)


def build_rhs_thm3(maxweight: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries1:
    if maxweight < 2:
        raise DomainError("maxweight must be at least 2")
    return ps_mul(build_star_twos(maxweight, digits, cache), build_threes(maxweight, digits, cache))


def build_exp_even_zeta(maxweight: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries1:
    """``exp(sum_n ζ(2n)/n x^(2n))``."""
    coeffs = [_ZERO] * (maxweight + 1)
    for n in range(1, maxweight // 2 + 1):
        coeffs[2 * n] = eval_mzv((2 * n,), digits, cache) / n
    return ps_exp(PowerSeries1(coeffs))


def build_exp_triple_zeta(maxweight: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries1:
    """``exp(sum_n (-1)^(n-1) ζ(3n)/n x^(3n))``."""
    coeffs = [_ZERO] * (maxweight + 1)
    for n in range(1, maxweight // 3 + 1):
        z = eval_mzv((3 * n,), digits, cache) / n
        coeffs[3 * n] = z if n % 2 else -z
    return ps_exp(PowerSeries1(coeffs))


def build_gamma_genfunc(maxdeg: int, digits: int = 30, cache: Optional[MZVCache] = None) -> PowerSeries2:
    """``exp(sum_{n>=2} ζ(n) (x^n + y^n - (x+y)^n) / n)`` to total degree ``maxdeg``."""
    from math import comb

    if maxdeg < 2:
        raise DomainError("maxdeg must be at least 2")
    terms: Dict[Tuple[int, int], BigReal] = {}
    for n in range(2, maxdeg + 1):
        zn = eval_mzv((n,), digits, cache)
        # x^n + y^n - (x+y)^n = -sum_{0<i<n} C(n,i) x^i y^(n-i)
        for i in range(1, n):
            terms[(i, n - i)] = -(zn * comb(n, i)) / n
    return ps_exp(PowerSeries2(terms, maxdeg))


def height_one_index(r: int, k: int) -> Index:
    """``(1, ..., 1, k+1)`` with ``r - 1`` leading ones."""
    return ones(r - 1) + (k + 1,)
