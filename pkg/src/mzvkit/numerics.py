"""High-precision evaluation of multiple zeta values.

``eval_mzv`` splits the word of an admissible index at every position and
sums products of multiple polylogarithms at 1/2 (Hölder convolution):

    ζ(w) = Σ_j Li_{dual(w[:j])}(1/2) · Li_{w[j:]}(1/2)

Each polylogarithm is a geometrically convergent fixed-point sum computed
by :mod:`mzvkit.kernel`. ``eval_mzv_direct`` is an independent low-precision
oracle: plain nested summation up to a cutoff plus an Euler-Maclaurin tail.
"""

from __future__ import annotations

import json
import logging
import math
import os
import re
import tempfile
import threading
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterator, Optional, Tuple, Union

import mpmath
from mpmath import libmp

from . import kernel
from .bigreal import BigReal, decimal_bits, working_bits
from .index import Index, IndexSum, star_expansion
from .linear import DomainError
from .words import Word, index_to_word, word_to_index

__all__ = [
    "li_at_half",
    "eval_mzv",
    "eval_mzv_direct",
    "nested_partial_sum",
    "eval_star",
    "eval_index_sum",
    "const",
    "log_int",
    "MZVCache",
    "default_cache",
    "set_default_cache",
    "holder_splittings",
    "DIRECT_MAX_DIGITS",
]

log = logging.getLogger(__name__)

DIRECT_MAX_DIGITS = 12
CACHE_FILENAME = "mzv_cache.jsonl"


# ---------------------------------------------------------------------------
# error planning for the fixed-point kernel


def canonical_exp(digits: int) -> int:
    """Binary exponent of every value returned at ``digits`` precision."""
    return -working_bits(digits)


def canonical_err(digits: int) -> int:
    """Error exponent reported for values at ``digits`` precision."""
    return -(decimal_bits(digits) + 16)


def _terms_needed(depth: int, bits: int) -> int:
    # The top-level summand is at most 2^-m (1 + ln m)^(depth-1); once
    # m >= 2.5 (depth-1) consecutive bounds shrink by >= 3/4, so the tail
    # after N terms is at most 4 times the bound at N+1. Ask for <= 2^-(bits+1).
    n = max(8, 3 * depth)
    while True:
        m = n + 1
        log2_tail = 2 - m + (depth - 1) * math.log2(1 + math.log(m))
        if log2_tail <= -(bits + 2):
            return n
        n += 1


def _rounding_ulps(depth: int, n_terms: int) -> int:
    # level j accumulates n_terms floor divisions plus the level-(j-1) error
    # damped by sum 1/m = H_N; the top level weights by 2^-m.
    h = sum(1.0 / m for m in range(1, n_terms + 1))
    e = 0.0
    for _ in range(depth - 1):
        e = h * e + n_terms
    e_top = e + n_terms
    return math.ceil(e_top * (1 + 1e-9)) + 1  # +1 covers the half-ulp tail


@lru_cache(maxsize=None)
def _guard_bits(depth: int, bits: int) -> int:
    guard = 16
    for _ in range(4):
        n = _terms_needed(depth, bits + guard)
        need = _rounding_ulps(depth, n).bit_length() + 4
        if need <= guard:
            return guard
        guard = need
    return guard


@lru_cache(maxsize=None)
def _li_fixed(parts: Tuple[int, ...], bits: int) -> Tuple[int, int]:
    """``(value, err)`` with ``|Li_parts(1/2) - value/2^bits| <= err/2^bits``."""
    if not parts:
        return 1 << bits, 0
    n = _terms_needed(len(parts), bits)
    value = kernel.nested_sum_half(parts, n, bits)
    return value, _rounding_ulps(len(parts), n)


def _fixed_bits(digits: int, weight: int) -> int:
    # bucket the depth so that a sweep at one precision reuses the same
    # polylogarithm values across weights
    depth = max(12, weight)
    base = working_bits(digits) + 4
    return base + _guard_bits(depth, base)


def _finish(total: int, err: int, scale_bits: int, digits: int, what: str) -> BigReal:
    # total/2^scale_bits with err ulps, rounded onto the canonical grid
    fexp = canonical_exp(digits)
    shift = scale_bits + fexp
    half = 1 << (shift - 1)
    man = (total + half) >> shift
    err_final = Fraction(err, 1 << shift) + Fraction(1, 2)  # in units 2^fexp
    bound = Fraction(2) ** (canonical_err(digits) - fexp)
    if err_final > bound:
        raise ArithmeticError(f"error budget exceeded while evaluating {what}")
    return BigReal(man, fexp, canonical_err(digits), digits)


# ---------------------------------------------------------------------------
# polylogarithms at 1/2 and the Hölder convolution


def _as_word(w) -> Word:
    if isinstance(w, str):
        return Word.parse(w)
    if isinstance(w, Word):
        return w
    return Word(*w)


def li_at_half(w, digits: int = 30) -> BigReal:
    """``Li_{k_1..k_r}(1/2)`` for the word of ``(k_1, ..., k_r)``; ``Li_ε = 1``."""
    w = _as_word(w)
    if w.length == 0:
        return BigReal.exact(1)
    if not w.last_is_y:
        raise DomainError(f"Li at 1/2 needs a word ending in y, got {w}")
    k = word_to_index(w)
    bits = _fixed_bits(digits, w.length)
    value, err = _li_fixed(tuple(k), bits)
    return _finish(value, err, bits, digits, f"Li_{w}(1/2)")


def holder_splittings(w: Word):
    """``[(dual prefix, suffix), ...]`` for the ``len(w) + 1`` splittings of ``w``."""
    return [(w.prefix(j).reverse_swap(), w.suffix_from(j)) for j in range(w.length + 1)]


def _eval_mzv_uncached(k: Index, digits: int) -> BigReal:
    w = index_to_word(k)
    bits = _fixed_bits(digits, w.length)
    total = 0
    err = 0
    for left, right in holder_splittings(w):
        a, ea = _li_fixed(tuple(word_to_index(left)) if left.length else (), bits)
        b, eb = _li_fixed(tuple(word_to_index(right)) if right.length else (), bits)
        total += a * b
        err += a * eb + b * ea + ea * eb
    return _finish(total, err, 2 * bits, digits, f"ζ{k}")


def _check_admissible(k) -> Index:
    if isinstance(k, (str, Word)):
        k = word_to_index(k)
    k = k if isinstance(k, Index) else Index(k)
    if not k.admissible:
        raise DomainError(f"ζ{k} is non-admissible (divergent); use regularize")
    return k


def eval_mzv(k, digits: int = 30, cache: Optional["MZVCache"] = None) -> BigReal:
    """ζ(k) for admissible ``k`` with absolute error at most ``10**-digits``."""
    k = _check_admissible(k)
    cache = default_cache() if cache is None else cache
    return cache.get_or_compute(k, digits, _eval_mzv_uncached)


def eval_star(k, digits: int = 30, cache: Optional["MZVCache"] = None) -> BigReal:
    """Multiple zeta-star value, summed from its ``2^(r-1)`` ordinary terms."""
    k = _check_admissible(k)
    return eval_index_sum(star_expansion(k), digits, cache)


def eval_index_sum(s: IndexSum, digits: int = 30, cache: Optional["MZVCache"] = None) -> BigReal:
    total = BigReal.exact(0)
    for idx, c in s._sorted_items():
        if not idx:
            total = total + BigReal.from_fraction(Fraction(c), digits)
            continue
        if not idx.admissible:
            raise DomainError(f"cannot evaluate non-admissible index {idx} in a sum")
        total = total + eval_mzv(idx, digits, cache) * c
    return total


# ---------------------------------------------------------------------------
# constants


def _from_mpf(t, prec: int, digits: int) -> BigReal:
    sign, man, exp, _ = t
    man = -man if sign else man
    # onto the canonical grid; mpmath rounding is within one ulp at prec
    fexp = canonical_exp(digits)
    shift = fexp - exp
    if shift > 0:
        man = (man + (1 << (shift - 1))) >> shift
    else:
        man <<= -shift
    return BigReal(man, fexp, canonical_err(digits), digits)


_ZETA_NAME = re.compile(r"^zeta(?:_n)?\((\d+)\)$")


def const(name: str, digits: int = 30, n: Optional[int] = None, cache: Optional["MZVCache"] = None) -> BigReal:
    """Named constant: ``pi``, ``gamma``, ``log2`` or ``zeta_n`` (with ``n >= 2``)."""
    m = _ZETA_NAME.match(name)
    if m:
        name, n = "zeta_n", int(m.group(1))
    prec = working_bits(digits) + 16
    if name == "pi":
        return _from_mpf(libmp.mpf_pi(prec), prec, digits)
    if name == "gamma":
        return _from_mpf(libmp.mpf_euler(prec), prec, digits)
    if name == "log2":
        return _from_mpf(libmp.mpf_ln2(prec), prec, digits)
    if name == "zeta_n":
        if n is None or n < 2:
            raise DomainError("zeta_n needs n >= 2")
        return eval_mzv((n,), digits, cache)
    raise DomainError(f"unknown constant {name!r}")



def log_int(n: int, digits: int = 30) -> BigReal:
    """Natural logarithm of a positive integer."""
    if n < 1:
        raise DomainError(f"log_int needs n >= 1, got {n}")
    prec = working_bits(digits) + 16
    return _from_mpf(libmp.mpf_log(libmp.from_int(n), prec), prec, digits)

# ---------------------------------------------------------------------------
# independent oracle: direct nested summation with an Euler-Maclaurin tail


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    b = mpmath.bernfrac(n)
    return Fraction(int(b[0]), int(b[1]))


@lru_cache(maxsize=None)
def _power_tail(p: int, order: int) -> Tuple[Tuple[int, Fraction], ...]:
    # sum_{m>n} m^-p  ~  n^(1-p)/(p-1) - n^-p/2 + sum_q B_2q/(2q)! (p)_(2q-1) n^(1-p-2q)
    out = {p - 1: Fraction(1, p - 1), p: Fraction(-1, 2)}
    q = 1
    while p + 2 * q - 1 <= order:
        rising = 1
        for i in range(2 * q - 1):
            rising *= p + i
        out[p + 2 * q - 1] = _bernoulli(2 * q) / math.factorial(2 * q) * rising
        q += 1
    return tuple((e, c) for e, c in out.items() if e <= order)


@lru_cache(maxsize=None)
def _tail_expansion(parts: Tuple[int, ...], order: int) -> Tuple[Tuple[int, Fraction], ...]:
    """Asymptotic series in 1/n of ``sum_{n<m_1<...<m_q} prod m_i^-k_i``."""
    series: Dict[int, Fraction] = {0: Fraction(1)}
    for k in reversed(parts):
        nxt: Dict[int, Fraction] = {}
        for e, c in series.items():
            for e2, c2 in _power_tail(e + k, order):
                nxt[e2] = nxt.get(e2, 0) + c * c2
        series = {e: c for e, c in nxt.items() if c != 0}
    return tuple(sorted(series.items()))


def eval_mzv_direct(k, digits: int = 8) -> BigReal:
    """Low-precision ζ(k) by truncated nested summation (oracle use only)."""
    k = _check_admissible(k)
    if digits > DIRECT_MAX_DIGITS or digits < 1:
        raise DomainError(f"direct summation supports 1..{DIRECT_MAX_DIGITS} digits, got {digits}")
    r = len(k)
    target = mpmath.mpf(10) ** (-digits - 2)
    cutoff = max(64, 8 * digits)
    order = k.weight + 2 * digits + 4
    with mpmath.workdps(digits + 15):
        while True:
            # partial sums over 0 < m_1 < ... < m_j <= cutoff, all j at once
            heads = [mpmath.mpf(1)] + [mpmath.mpf(0)] * r
            for m in range(1, cutoff + 1):
                for j in range(r, 0, -1):
                    heads[j] += heads[j - 1] / mpmath.mpf(m) ** k[j - 1]
            x = mpmath.mpf(1) / cutoff
            total = heads[r]
            crude = mpmath.mpf(0)
            for j in range(r):
                series = _tail_expansion(tuple(k[j:]), order)
                tail = mpmath.mpf(0)
                for e, c in series:
                    tail += mpmath.mpf(c.numerator) / c.denominator * x ** e
                total += heads[j] * tail
                # crude bound: size of the two highest retained orders
                for e, c in series[-2:]:
                    crude += abs(heads[j] * mpmath.mpf(c.numerator) / c.denominator * x ** e)
            if crude <= target:
                break
            cutoff *= 2
        man, exp = total.man_exp if total else (0, 0)
    return BigReal(int(man), int(exp), -decimal_bits(digits), digits)


def nested_partial_sum(k, limit: int, digits: int = 30) -> BigReal:
    """``sum over 0 < m_1 < ... < m_r < limit of 1/(m_1^k_1 ... m_r^k_r)``.

    Defined for any index, admissible or not; used to observe the
    divergence of non-admissible indices against their regularization.
    """
    k = k if isinstance(k, Index) else Index(k)
    if limit < 1:
        raise DomainError(f"limit must be positive, got {limit}")
    r = len(k)
    if r == 0:
        return BigReal.exact(1)
    n = limit - 1
    ulps = _rounding_ulps(r, n)
    bits = working_bits(digits) + 4 + ulps.bit_length() + 4
    inner = [0] * r
    inner[0] = 1 << bits
    total = 0
    top = k[-1]
    for m in range(1, n + 1):
        total += inner[r - 1] // m ** top
        for j in range(r - 1, 0, -1):
            inner[j] += inner[j - 1] // m ** k[j - 1]
    return _finish(total, ulps, bits, digits, f"partial sum {k} below {limit}")


# ---------------------------------------------------------------------------
# persistent cache


class MZVCache:
    """Thread-safe map ``(index, digits) -> exact decimal value``.

    A stored value is served for any request at the same or lower precision.
    Persistence happens only through :meth:`save`.
    """

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self.path = Path(path) if path is not None else None
        self._data: Dict[Tuple[int, ...], Dict[int, str]] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            self.load(self.path)

    @classmethod
    def in_dir(cls, directory: Union[str, Path]) -> "MZVCache":
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        return cls(d / CACHE_FILENAME)

    def __len__(self) -> int:
        with self._lock:
            return sum(len(v) for v in self._data.values())

    def records(self) -> Iterator[Tuple[Tuple[int, ...], int, str]]:
        with self._lock:
            items = [(k, d, v) for k, by_d in self._data.items() for d, v in by_d.items()]
        yield from sorted(items)

    def lookup(self, k, digits: int) -> Optional[BigReal]:
        with self._lock:
            by_d = self._data.get(tuple(k))
            if not by_d:
                return None
            usable = [d for d in by_d if d >= digits]
            if not usable:
                return None
            d = min(usable)
            text = by_d[d]
        return BigReal.from_decimal(text, canonical_exp(d), canonical_err(d), d)

    def store(self, k, digits: int, value: BigReal) -> None:
        with self._lock:
            self._data.setdefault(tuple(k), {}).setdefault(digits, value.exact_decimal())

    def get_or_compute(self, k: Index, digits: int, compute: Callable[[Index, int], BigReal]) -> BigReal:
        hit = self.lookup(k, digits)
        if hit is not None:
            return hit
        value = compute(k, digits)
        self.store(k, digits, value)
        return self.lookup(k, digits)

    def load(self, path: Union[str, Path]) -> int:
        loaded = 0
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = tuple(Index(rec["index"]))
                    digits = int(rec["digits"])
                    value = str(rec["value"])
                    Fraction(value)
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("skipping corrupt cache line %s:%d (%s)", path, lineno, exc)
                    continue
                with self._lock:
                    self._data.setdefault(key, {})[digits] = value
                loaded += 1
        return loaded

    def save(self, path: Optional[Union[str, Path]] = None) -> Path:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache file configured")
        target.parent.mkdir(parents=True, exist_ok=True)
        lines = [
            json.dumps({"index": list(k), "digits": d, "value": v}, separators=(",", ":"))
            for k, d, v in self.records()
        ]
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".mzv_cache")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
        os.replace(tmp, target)
        return target

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_default_cache: Optional[MZVCache] = None
_default_lock = threading.Lock()


def default_cache() -> MZVCache:
    """Process-wide cache; backed by ``$MZV_CACHE_DIR`` when that is set."""
    global _default_cache
    with _default_lock:
        if _default_cache is None:
            d = os.environ.get("MZV_CACHE_DIR")
            _default_cache = MZVCache.in_dir(d) if d else MZVCache()
        return _default_cache


def set_default_cache(cache: Optional[MZVCache]) -> None:
    global _default_cache
    with _default_lock:
        _default_cache = cache
