from math import comb

import pytest
from hypothesis import given, strategies as st

from mzvkit import DomainError, Index, Word, WordSum, dual, index_to_word, shuffle, word_dual, word_to_index
from mzvkit.words import parse_word

from oracles import shuffle_brute

texts = st.text(alphabet="xy", max_size=6)
indices = st.lists(st.integers(1, 5), min_size=1, max_size=4).map(Index)


def test_encoding_examples():
    assert str(index_to_word((1, 2))) == "xyy"
    assert str(index_to_word((2,))) == "xy"
    assert str(index_to_word((1, 1, 3))) == "xxyyy"
    assert word_to_index("xyy") == Index((1, 2))
    assert str(Word.empty()) == "ε"
    with pytest.raises(DomainError):
        word_to_index("yx")
    with pytest.raises(DomainError):
        index_to_word(())
    with pytest.raises(DomainError):
        parse_word("xz")


@given(indices)
def test_encoding_round_trip(k):
    w = index_to_word(k)
    assert len(w) == k.weight
    assert word_to_index(w) == k
    assert w.admissible == k.admissible


@given(texts)
def test_letter_access(t):
    w = Word.parse(t)
    assert "".join(w.letter(i) for i in range(len(w))) == t
    if t:
        assert str(w.reverse_swap()) == "".join("x" if c == "y" else "y" for c in reversed(t))
    for j in range(len(t) + 1):
        assert str(w.prefix(j).concat(w.suffix_from(j))) == str(w)
    assert w.leading_ys() == len(t) - len(t.lstrip("y"))


def test_shuffle_examples():
    assert shuffle("xy", "xy").render() == "2·xyxy + 4·xxyy"
    assert shuffle("y", "y") == WordSum({"yy": 2})
    assert shuffle("", "xy") == WordSum({"xy": 1})


@given(texts, texts)
def test_shuffle_matches_brute_force(a, b):
    got = {("" if w.length == 0 else str(w)): c for w, c in shuffle(a, b).items()}
    assert got == shuffle_brute(a, b)
    assert shuffle(a, b).total_multiplicity() == comb(len(a) + len(b), len(a))


@given(texts, texts, texts)
def test_shuffle_commutative_associative(a, b, c):
    assert shuffle(a, b) == shuffle(b, a)
    ab = shuffle(a, b)
    left = WordSum.zero()
    for w, m in ab.items():
        left = left + shuffle(w, c).scale(m)
    right = WordSum.zero()
    for w, m in shuffle(b, c).items():
        right = right + shuffle(a, w).scale(m)
    assert left == right


@given(indices)
def test_word_dual_matches_index_dual(k):
    if not k.admissible:
        with pytest.raises(DomainError):
            word_dual(index_to_word(k))
        return
    assert word_to_index(word_dual(index_to_word(k))) == dual(k)
