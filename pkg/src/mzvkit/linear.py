"""Formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Hashable, Iterable, Iterator, Mapping, Tuple, Union

Scalar = Union[int, Fraction]


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class LinComb:
    """Immutable finite linear combination ``sum c_i * key_i`` over the rationals.

    Zero coefficients are never stored. Subclasses fix the key type and
    define ``*`` as the algebra product.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable[Tuple[Hashable, Scalar]], None] = None):
        acc: Dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                key = self._coerce_key(key)
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: _normalize(c) for k, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _coerce_key(cls, key):
        return key

    @classmethod
    def _from_dict(cls, d: Dict):
        # trusted constructor: keys already coerced
        obj = cls.__new__(cls)
        obj._terms = {k: _normalize(c) for k, c in d.items() if c != 0}
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, key, coeff: Scalar = 1):
        return cls({key: coeff})

    @classmethod
    def zero(cls):
        return cls._from_dict({})

    # mapping-like access
    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, 0)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def total_multiplicity(self) -> Fraction:
        return sum(self._terms.values(), 0)

    # vector space structure
    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        d = dict(self._terms)
        for k, c in other._terms.items():
            d[k] = d.get(k, 0) + c
        return self._from_dict(d)

    def __neg__(self):
        return self._from_dict({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar):
        if c == 0:
            return self.zero()
        return self._from_dict({k: v * c for k, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, Rational):
            return self.scale(c)
        return NotImplemented

    def __truediv__(self, c):
        if isinstance(c, Rational):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return type(self) is type(other) and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def l1_distance(self, other) -> Fraction:
        diff = self - other
        return sum((abs(c) for c in diff._terms.values()), Fraction(0))

    # rendering
    def _sort_key(self, key):
        return key

    def _sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def _render_key(self, key) -> str:
        return str(key)

    def render(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (key, c) in enumerate(self._sorted_items()):
            mag = abs(c)
            if mag == 1:
                body = self._render_key(key)
            else:
                body = f"{mag}·{self._render_key(key)}"
            if i == 0:
                out.append(("−" if c < 0 else "") + body)
            else:
                out.append((" − " if c < 0 else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()!r})"


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c
