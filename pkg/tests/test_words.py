import pytest
from hypothesis import given, strategies as st

from smallcancel.words import (
    Alphabet,
    CyclicWord,
    Word,
    WordSyntaxError,
    closure_size,
    cyclic_shifts,
    find_all,
    free_reduce,
    interior,
    is_non_periodic,
    rotation_period,
    symmetrized_closure,
    syllables,
)

AB = Alphabet(("a", "b"))
letters = st.sampled_from([1, -1, 2, -2, 3, -3])
words = st.lists(letters, max_size=30).map(lambda l: Word(tuple(l)))


def cyclic(text):
    return CyclicWord(AB.parse(text))


def test_parse_and_format():
    w = AB.parse("a^3 b^-2 a # trailing comment")
    assert w.letters == (1, 1, 1, -2, -2, 1)
    assert AB.format(w) == "a^3 b^-2 a"
    assert AB.format(w, powers=False) == "a a a b^-1 b^-1 a"


@pytest.mark.parametrize("bad", ["c", "a^0", "a^", "a^x"])
def test_parse_rejects(bad):
    with pytest.raises(WordSyntaxError):
        AB.parse(bad)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("a b",))


@given(words)
def test_free_reduce_idempotent_and_reduced(w):
    r = free_reduce(w)
    assert r.is_reduced()
    assert free_reduce(r) == r
    assert len(r) % 2 == len(w) % 2


@given(words)
def test_inverse_cancels(w):
    assert free_reduce(w + w.inverse()) == Word()
    assert w.inverse().inverse() == w


@given(words, words)
def test_reduce_is_a_homomorphism(u, v):
    assert free_reduce(free_reduce(u) + free_reduce(v)) == free_reduce(u + v)


@given(words)
def test_syllables_roundtrip(w):
    syls = syllables(w)
    assert Word(tuple(c for s in syls for c in s.word())) == w
    assert all(a.letter != b.letter for a, b in zip(syls, syls[1:]))


def test_interior():
    w = AB.parse("a^2 b a^-1 b^3")
    assert interior(w) == AB.parse("b a^-1")
    assert interior(AB.parse("a b")) == Word()


def test_cyclic_word_requires_cyclic_reduction():
    with pytest.raises(ValueError):
        cyclic("a b a^-1")
    with pytest.raises(ValueError):
        CyclicWord(Word())


def test_closure_sizes():
    assert closure_size(cyclic("a b a b^-1")) == 8
    assert is_non_periodic(cyclic("a b a b^-1"))
    assert rotation_period(cyclic("a b a b")) == 2
    assert not is_non_periodic(cyclic("a b a b"))
    assert closure_size(cyclic("a b a^-1 b^-1")) == 8


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=14))
def test_closure_size_matches_enumeration(ls):
    w = free_reduce(Word(tuple(ls)))
    while len(w) >= 2 and w.letters[0] == -w.letters[-1]:
        w = w[1:-1]
    if len(w) == 0:
        return
    r = CyclicWord(w)
    assert closure_size(r) == len(symmetrized_closure([r]))
    assert len(set(cyclic_shifts(r))) == rotation_period(r)


def test_symmetrized_closure_truncates():
    r, s = cyclic("a b a b^-1"), cyclic("a^3 b^3")
    assert symmetrized_closure([r, s], T=4) == symmetrized_closure([r])


@given(st.lists(st.integers(1, 3), max_size=6), st.lists(st.integers(1, 3), max_size=40))
def test_find_all_matches_naive(p, t):
    naive = [i for i in range(len(t) - len(p) + 1) if t[i : i + len(p)] == p]
    assert find_all(p, t) == naive
