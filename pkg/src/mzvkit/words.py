"""Binary words over {x, y}, the shuffle product and duality.

The index ``(k_1, ..., k_r)`` is encoded as
``x^(k_r-1) y x^(k_(r-1)-1) y ... x^(k_1-1) y``: the outermost summation
variable gives the leading block. Convergent words start with ``x`` and
end with ``y``, and duality is reversal combined with ``x <-> y``.

Words are packed into an integer: letter ``i`` (from the left) is ``y``
iff bit ``length - 1 - i`` is set.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, NamedTuple, Tuple

from .index import Index
from .linear import DomainError, LinComb

__all__ = [
    "Word",
    "WordSum",
    "index_to_word",
    "word_to_index",
    "shuffle",
    "word_dual",
    "parse_word",
]


class Word(NamedTuple):
    bits: int
    length: int

    @classmethod
    def parse(cls, text: str) -> "Word":
        bits = 0
        for ch in text:
            if ch == "x":
                bits <<= 1
            elif ch == "y":
                bits = (bits << 1) | 1
            else:
                raise DomainError(f"words use letters x and y only, got {text!r}")
        return cls(bits, len(text))

    @classmethod
    def empty(cls) -> "Word":
        return cls(0, 0)

    def __str__(self) -> str:
        if self.length == 0:
            return "ε"
        return format(self.bits, f"0{self.length}b").replace("0", "x").replace("1", "y")

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __len__(self) -> int:
        return self.length

    def letter(self, i: int) -> str:
        return "y" if (self.bits >> (self.length - 1 - i)) & 1 else "x"

    @property
    def first_is_y(self) -> bool:
        return self.length > 0 and bool(self.bits >> (self.length - 1))

    @property
    def last_is_y(self) -> bool:
        return self.length > 0 and bool(self.bits & 1)

    @property
    def admissible(self) -> bool:
        return self.length > 0 and not self.first_is_y and self.last_is_y

    def concat(self, other: "Word") -> "Word":
        return Word((self.bits << other.length) | other.bits, self.length + other.length)

    def prefix(self, j: int) -> "Word":
        return Word(self.bits >> (self.length - j), j)

    def suffix_from(self, j: int) -> "Word":
        n = self.length - j
        return Word(self.bits & ((1 << n) - 1), n)

    def leading_ys(self) -> int:
        n = 0
        while n < self.length and (self.bits >> (self.length - 1 - n)) & 1:
            n += 1
        return n

    def reverse_swap(self) -> "Word":
        """Reverse the word and exchange x and y (no admissibility check)."""
        n = self.length
        rev = int(format(self.bits, f"0{n}b")[::-1], 2) if n else 0
        return Word(rev ^ ((1 << n) - 1), n)


def parse_word(text: str) -> Word:
    return Word.parse(text.strip())


class WordSum(LinComb):
    """Rational linear combination of words; ``*`` is the shuffle product."""

    __slots__ = ()

    @classmethod
    def _coerce_key(cls, key):
        if isinstance(key, str):
            return Word.parse(key)
        if not isinstance(key, Word):
            return Word(*key)
        return key

    def _sort_key(self, key):
        return (-key.length, -key.bits)

    def __mul__(self, other):
        if isinstance(other, WordSum):
            return shuffle(self, other)
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented


def index_to_word(k) -> Word:
    k = k if isinstance(k, Index) else Index(k)
    if not k:
        raise DomainError("the empty index has no word")
    bits = 0
    length = 0
    for part in reversed(k):
        bits = (bits << part) | 1
        length += part
    return Word(bits, length)


def word_to_index(w) -> Index:
    if isinstance(w, str):
        w = Word.parse(w)
    if w.length == 0 or not w.last_is_y:
        raise DomainError(f"only nonempty words ending in y correspond to indices, got {w}")
    parts = []
    run = 1
    for i in range(w.length):
        if (w.bits >> (w.length - 1 - i)) & 1:
            parts.append(run)
            run = 1
        else:
            run += 1
    parts.reverse()
    return Index._trusted(tuple(parts))


@lru_cache(maxsize=None)
def _shuffle_pair(u: Word, v: Word) -> Tuple[Tuple[Word, int], ...]:
    # u ⧢ v = a(u' ⧢ v) + b(u ⧢ v'), a, b the first letters
    if u.length == 0:
        return ((v, 1),)
    if v.length == 0:
        return ((u, 1),)
    if (u.length, u.bits) > (v.length, v.bits):
        return _shuffle_pair(v, u)
    acc: Dict[Word, int] = {}
    for w, rest in ((u, _shuffle_pair(u.suffix_from(1), v)), (v, _shuffle_pair(u, v.suffix_from(1)))):
        head = (w.bits >> (w.length - 1)) & 1
        for t, c in rest:
            key = Word((head << t.length) | t.bits, t.length + 1)
            acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def shuffle(u, v) -> WordSum:
    """Shuffle product of two words or word sums (bilinear)."""
    u = u if isinstance(u, WordSum) else WordSum.monomial(u)
    v = v if isinstance(v, WordSum) else WordSum.monomial(v)
    acc: Dict = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            c = cu * cv
            for w, m in _shuffle_pair(wu, wv):
                acc[w] = acc.get(w, 0) + c * m
    return WordSum._from_dict(acc)


def word_dual(w) -> Word:
    if isinstance(w, str):
        w = Word.parse(w)
    if not w.admissible:
        raise DomainError(f"duality needs an admissible word, got {w}")
    return w.reverse_swap()
