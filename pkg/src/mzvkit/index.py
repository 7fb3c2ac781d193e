"""Indices of multiple zeta values and the stuffle (quasi-shuffle) product.

An index ``(k_1, ..., k_r)`` stands for the nested sum over
``0 < m_1 < ... < m_r`` of ``1 / (m_1^k_1 ... m_r^k_r)``; it converges
when the last part is at least 2.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .linear import DomainError, LinComb

__all__ = [
    "Index",
    "IndexSum",
    "Profile",
    "profile",
    "dual",
    "add_pointwise",
    "enumerate_indices",
    "stuffle",
    "star_expansion",
    "parse_index",
    "ones",
]


class Index(tuple):
    """Immutable sequence of positive integers; the empty index is the unit."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise DomainError(f"index parts must be positive integers, got {parts!r}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: Tuple[int, ...]) -> "Index":
        return tuple.__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def height(self) -> int:
        return sum(1 for p in self if p > 1)

    @property
    def admissible(self) -> bool:
        return len(self) > 0 and self[-1] >= 2

    def trailing_ones(self) -> int:
        m = 0
        for p in reversed(self):
            if p != 1:
                break
            m += 1
        return m

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Index{str(self)}"

    def __add__(self, other):
        # concatenation, kept an Index
        return Index._trusted(tuple.__add__(self, tuple(other)))

    def __getitem__(self, item):
        res = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return Index._trusted(res)
        return res


def _as_index(k) -> Index:
    return k if isinstance(k, Index) else Index(k)


def ones(n: int) -> Index:
    return Index._trusted((1,) * n)


class IndexSum(LinComb):
    """Rational linear combination of indices; ``*`` is the stuffle product."""

    __slots__ = ()

    @classmethod
    def _coerce_key(cls, key):
        return _as_index(key)

    def _render_key(self, key) -> str:
        return str(key)

    def __mul__(self, other):
        if isinstance(other, IndexSum):
            return stuffle(self, other)
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def render_zeta(self) -> str:
        """Render as a combination of zeta symbols, e.g. ``ζ(2) − 2·ζ(1,2)``."""
        if not self:
            return "0"
        out = []
        for i, (key, c) in enumerate(self._sorted_items()):
            sym = f"ζ{key}" if key else ""
            mag = abs(c)
            if not sym:
                body = str(mag)
            elif mag == 1:
                body = sym
            else:
                body = f"{mag}·{sym}"
            out.append(("−" if c < 0 else "") + body if i == 0 else (" − " if c < 0 else " + ") + body)
        return "".join(out)


class Profile(NamedTuple):
    weight: int
    depth: int
    height: int
    admissible: bool


def profile(k) -> Profile:
    k = _as_index(k)
    return Profile(k.weight, k.depth, k.height, k.admissible)


def dual(k) -> Index:
    """Dual admissible index (word reversal with the letters swapped)."""
    from .words import index_to_word, word_dual, word_to_index

    k = _as_index(k)
    if not k.admissible:
        raise DomainError(f"duality needs an admissible index, got {k}")
    return word_to_index(word_dual(index_to_word(k)))


def add_pointwise(a, b) -> Index:
    a, b = _as_index(a), _as_index(b)
    if len(a) != len(b):
        raise DomainError(f"depth mismatch: {a} has depth {len(a)}, {b} has depth {len(b)}")
    return Index._trusted(tuple(x + y for x, y in zip(a, b)))


@lru_cache(maxsize=None)
def _compositions(weight: int, depth: int, min_part: int) -> Tuple[Tuple[int, ...], ...]:
    if depth == 0:
        return ((),) if weight == 0 else ()
    out = []
    for first in range(min_part, weight - min_part * (depth - 1) + 1):
        for rest in _compositions(weight - first, depth - 1, min_part):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_indices(weight: int, depth: Optional[int] = None, min_part: int = 1) -> List[Index]:
    """All compositions of ``weight`` with parts ``>= min_part``, in lexicographic order.

    With ``depth=None`` every depth is included.
    """
    if min_part < 1:
        raise DomainError("min_part must be positive")
    if weight < 0:
        return []
    if depth is not None:
        return [Index._trusted(c) for c in _compositions(weight, depth, min_part)]
    found = []
    for d in range(0, weight // min_part + 1):
        found.extend(_compositions(weight, d, min_part))
    return [Index._trusted(c) for c in sorted(found)]


@lru_cache(maxsize=None)
def _stuffle_pair(u: Tuple[int, ...], v: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    # quasi-shuffle recursion on the first parts:
    # (a,u')*(b,v') = a.(u'*(b,v')) + b.((a,u')*v') + (a+b).(u'*v')
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    if u > v:
        return _stuffle_pair(v, u)
    acc: Dict[Tuple[int, ...], int] = {}
    a, ur = u[0], u[1:]
    b, vr = v[0], v[1:]
    for head, sub in ((a, _stuffle_pair(ur, v)), (b, _stuffle_pair(u, vr)), (a + b, _stuffle_pair(ur, vr))):
        for w, c in sub:
            key = (head,) + w
            acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def stuffle(u, v) -> IndexSum:
    """Stuffle product of two indices or index sums (bilinear)."""
    u = u if isinstance(u, IndexSum) else IndexSum.monomial(_as_index(u))
    v = v if isinstance(v, IndexSum) else IndexSum.monomial(_as_index(v))
    acc: Dict = {}
    for ku, cu in u.items():
        for kv, cv in v.items():
            c = cu * cv
            for w, m in _stuffle_pair(tuple(ku), tuple(kv)):
                acc[w] = acc.get(w, 0) + c * m
    return IndexSum._from_dict({Index._trusted(w): c for w, c in acc.items()})


def star_expansion(k) -> IndexSum:
    """Expand the non-strict nested sum of ``k`` into ordinary indices.

    Each of the ``r - 1`` commas is either kept or merged (adding the
    neighbouring parts), giving ``2^(r-1)`` terms.
    """
    k = _as_index(k)
    if not k:
        return IndexSum.monomial(k)
    r = len(k)
    acc: Dict = {}
    for n_cuts in range(r):
        for cuts in combinations(range(1, r), n_cuts):
            bounds = (0,) + cuts + (r,)
            merged = tuple(sum(k[bounds[i]:bounds[i + 1]]) for i in range(len(bounds) - 1))
            acc[merged] = acc.get(merged, 0) + 1
    return IndexSum._from_dict({Index._trusted(w): c for w, c in acc.items()})


_INDEX_RE = re.compile(r"^\(?\s*(\d+(\s*,\s*\d+)*)?\s*\)?$")


def parse_index(text: str) -> Index:
    """Parse ``"(1,2)"``, ``"1,2"`` or ``"()"``."""
    s = text.strip()
    m = _INDEX_RE.match(s)
    if not m or (s.startswith("(") != s.endswith(")")):
        raise DomainError(f"cannot parse index {text!r}")
    body = s.strip("()").strip()
    if not body:
        return Index(())
    return Index(int(p) for p in body.split(","))


def index_from_json(parts: Sequence[int]) -> Index:
    return Index(parts)
