"""Shuffle- and stuffle-regularized polynomials.

``shuffle_regularize(w)`` is the unique polynomial in ``T`` with admissible
coefficients that gives back ``w`` when ``T`` is replaced by the word ``y``
and products are expanded with the shuffle product. ``stuffle_regularize(k)``
is the analogue with ``T -> (1)`` and the stuffle product. Both are exact;
Euler's constant only enters through :func:`rebase`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

from .index import Index, IndexSum, ones, stuffle
from .linear import DomainError
from .words import Word, WordSum, _shuffle_pair, index_to_word, shuffle, word_to_index

__all__ = [
    "RegPoly",
    "NumPoly",
    "shuffle_regularize",
    "stuffle_regularize",
    "reg_constant_term",
    "rebase",
    "substitute_shuffle",
    "substitute_stuffle",
]

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class RegPoly:
    """Polynomial ``sum_i c_i T^i`` whose coefficients ``c_i`` are IndexSums.

    The empty index inside a coefficient stands for the rational constant 1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[IndexSum] = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[IndexSum, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree in ``T``; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> IndexSum:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else IndexSum.zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, RegPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "RegPoly") -> "RegPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RegPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "RegPoly") -> "RegPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RegPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def scale(self, c) -> "RegPoly":
        return RegPoly([x.scale(c) for x in self.coeffs])

    def indices(self):
        for c in self.coeffs:
            yield from c.keys()

    def render(self) -> str:
        terms = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            for idx, c in self.coeffs[power]._sorted_items():
                terms.append((c, idx, power))
        if not terms:
            return "0"
        out = []
        for i, (c, idx, power) in enumerate(terms):
            c = Fraction(c)
            parts = []
            if abs(c.numerator) != 1:
                parts.append(str(abs(c.numerator)))
            if idx:
                parts.append(f"ζ{idx}")
            if power == 1:
                parts.append("T")
            elif power > 1:
                parts.append("T" + str(power).translate(_SUPERSCRIPT))
            body = "·".join(parts) or "1"
            if c.denominator != 1:
                body += f"/{c.denominator}"
            if i == 0:
                out.append(("−" if c < 0 else "") + body)
            else:
                out.append((" − " if c < 0 else " + ") + body)
        return "".join(out)

    __str__ = render

    def __repr__(self) -> str:
        return f"RegPoly({self.render()!r})"

    def to_json(self) -> List[dict]:
        out = []
        for power, c in enumerate(self.coeffs):
            terms = []
            for idx, q in c._sorted_items():
                q = Fraction(q)
                terms.append({"index": list(idx), "coeff_num": q.numerator, "coeff_den": q.denominator})
            out.append({"power": power, "terms": terms})
        return out

    @classmethod
    def from_json(cls, data: List[dict]) -> "RegPoly":
        n = max((d["power"] for d in data), default=-1) + 1
        coeffs = [IndexSum.zero()] * n
        for d in data:
            coeffs[d["power"]] = IndexSum(
                (Index(t["index"]), Fraction(t["coeff_num"], t["coeff_den"])) for t in d["terms"]
            )
        return cls(coeffs)


def _wordsum_to_indexsum(ws: WordSum) -> IndexSum:
    d = {}
    for w, c in ws.items():
        d[Index(()) if w.length == 0 else word_to_index(w)] = c
    return IndexSum._from_dict(d)


def _indexsum_to_wordsum(s: IndexSum) -> WordSum:
    return WordSum._from_dict({(Word.empty() if not k else index_to_word(k)): c for k, c in s.items()})


def _poly_add(acc: List[Dict], poly: Tuple[Tuple[Tuple, ...], ...], scale, shift: int = 0) -> None:
    # acc[i + shift] += scale * poly[i], with polys stored as tuples of (key, coeff) pairs
    while len(acc) < len(poly) + shift:
        acc.append({})
    for i, terms in enumerate(poly):
        slot = acc[i + shift]
        for key, c in terms:
            slot[key] = slot.get(key, 0) + scale * c


def _freeze(acc: List[Dict]) -> Tuple[Tuple[Tuple, ...], ...]:
    cs = [tuple((k, c) for k, c in d.items() if c != 0) for d in acc]
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


_Y = Word(1, 1)


@lru_cache(maxsize=None)
def _shuffle_reg(w: Word) -> Tuple[Tuple[Tuple[Word, Fraction], ...], ...]:
    m = w.leading_ys()
    if m == 0:
        return (((w, 1),),)
    # y ⧢ (y^(m-1) u) = m y^m u + (words with exactly m-1 leading y's)
    rest = Word(w.bits & ((1 << (w.length - 1)) - 1), w.length - 1)
    acc: List[Dict] = []
    inv_m = Fraction(1, m)
    _poly_add(acc, _shuffle_reg(rest), inv_m, shift=1)
    for t, c in _shuffle_pair(_Y, rest):
        if t == w:
            continue
        _poly_add(acc, _shuffle_reg(t), -inv_m * c)
    return _freeze(acc)


def shuffle_regularize(w) -> RegPoly:
    """Shuffle-regularized polynomial of a word that is empty or ends in ``y``."""
    if isinstance(w, Index):
        w = index_to_word(w) if w else Word.empty()
    elif isinstance(w, str):
        w = Word.parse(w)
    if w.length and not w.last_is_y:
        raise DomainError(f"shuffle regularization needs a word ending in y, got {w}")
    poly = _shuffle_reg(w)
    return RegPoly([_wordsum_to_indexsum(WordSum._from_dict(dict(terms))) for terms in poly])


@lru_cache(maxsize=None)
def _stuffle_reg(k: Tuple[int, ...]) -> Tuple[Tuple[Tuple[Tuple[int, ...], Fraction], ...], ...]:
    m = 0
    while m < len(k) and k[len(k) - 1 - m] == 1:
        m += 1
    if m == 0:
        return (((k, 1),),)
    # (1) * (k', 1^(m-1)) = m (k', 1^m) + (terms with fewer trailing 1's)
    rest = k[:-1]
    acc: List[Dict] = []
    inv_m = Fraction(1, m)
    _poly_add(acc, _stuffle_reg(rest), inv_m, shift=1)
    for t, c in stuffle((1,), rest).items():
        if t == k:
            continue
        _poly_add(acc, _stuffle_reg(tuple(t)), -inv_m * c)
    return _freeze(acc)


def stuffle_regularize(k) -> RegPoly:
    """Stuffle-regularized polynomial of a nonempty index."""
    if isinstance(k, (str, Word)):
        k = word_to_index(k)
    k = k if isinstance(k, Index) else Index(k)
    if not k:
        raise DomainError("stuffle regularization needs a nonempty index")
    poly = _stuffle_reg(tuple(k))
    return RegPoly([IndexSum((Index._trusted(i), c) for i, c in terms) for terms in poly])


def reg_constant_term(p: RegPoly) -> IndexSum:
    return p.coeff(0)


def substitute_shuffle(p: RegPoly) -> WordSum:
    """Replace ``T`` by the word ``y`` and expand with the shuffle product."""
    total = WordSum.zero()
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        # y ⧢ ... ⧢ y (i factors) = i! y^i
        y_pow = WordSum.monomial(Word((1 << i) - 1, i), factorial(i))
        total = total + shuffle(_indexsum_to_wordsum(c), y_pow)
    return total


def substitute_stuffle(p: RegPoly) -> IndexSum:
    """Replace ``T`` by the index ``(1)`` and expand with the stuffle product."""
    total = IndexSum.zero()
    power = IndexSum.monomial(Index(()))
    for i, c in enumerate(p.coeffs):
        if i:
            power = stuffle(power, ones(1))
        if c:
            total = total + stuffle(c, power)
    return total


class NumPoly:
    """Numeric polynomial ``sum_j coeffs[j] * (T - shift)^j``."""

    __slots__ = ("coeffs", "shift", "shift_name")

    def __init__(self, coeffs, shift, shift_name: str | None = None):
        self.coeffs = tuple(coeffs)
        self.shift = shift
        self.shift_name = shift_name

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative_coefficients(self) -> list:
        """``j! * coeffs[j]``, the b_i style coefficients of the shifted expansion."""
        return [c * factorial(j) for j, c in enumerate(self.coeffs)]

    def __call__(self, t):
        x = t - self.shift
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def __repr__(self) -> str:
        name = self.shift_name or "s"
        return "NumPoly(" + " + ".join(f"{c}·(T−{name})^{j}" for j, c in enumerate(self.coeffs)) + ")"


def rebase(p: RegPoly, shift, digits: int = 30) -> NumPoly:
    """Evaluate the coefficients of ``p`` and re-expand it in powers of ``T - shift``.

    ``shift`` is a BigReal, an exact rational, or one of the constant names
    understood by :func:`mzvkit.numerics.const` (e.g. ``"gamma"``).
    """
    from .bigreal import BigReal
    from .numerics import const, eval_index_sum

    name = None
    if isinstance(shift, str):
        name = shift
        shift = const(shift, digits)
    elif not isinstance(shift, BigReal):
        shift = BigReal.from_fraction(Fraction(shift), digits)
    vals = [eval_index_sum(c, digits) for c in p.coeffs]
    n = len(vals)
    powers = [BigReal.exact(1)]
    for _ in range(1, n):
        powers.append(powers[-1] * shift)
    out = []
    for j in range(n):
        acc = BigReal.exact(0)
        for i in range(j, n):
            acc = acc + vals[i] * powers[i - j] * comb(i, j)
        out.append(acc)
    return NumPoly(out, shift, name)
