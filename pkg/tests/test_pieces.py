import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brute import closure_elements, hashed_max_pieces, pairwise_max_pieces
from smallcancel.families import ExampleCF, random_cyclically_reduced
from smallcancel.pieces import (
    SymmetrizedSet,
    check_c_prime,
    check_c_prime_f,
    factor_hits,
    longest_common_factor,
    max_piece_lengths,
    pair_condition,
)
from smallcancel.viable import constant, corrected_example
from smallcancel.words import Alphabet, CyclicWord, Word

AB = Alphabet(("a", "b"))


def cyc(text):
    return CyclicWord(AB.parse(text))


def random_set(seed, gens=2, count=3, lo=1, hi=12):
    rng = random.Random(seed)
    return [CyclicWord(random_cyclically_reduced(rng, gens, rng.randint(lo, hi))) for _ in range(count)]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 3), st.integers(1, 4))
def test_index_matches_quadratic_oracle(seed, gens, count):
    rels = random_set(seed, gens, count)
    report = max_piece_lengths(SymmetrizedSet(rels))
    assert [e.max_piece_len for e in report.entries] == pairwise_max_pieces(rels)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_witness_piece_is_a_piece(seed):
    rels = random_set(seed, 2, 3, 4, 16)
    S = SymmetrizedSet(rels)
    for e in max_piece_lengths(S).entries:
        if e.max_piece_len and e.witness is not None:
            w = e.witness
            assert len(w.piece) == e.max_piece_len
            assert w.first != w.second
            assert S.element(w.first)[: e.max_piece_len] == w.piece
            assert S.element(w.second)[: e.max_piece_len] == w.piece
            assert S.is_piece(w.piece)


def test_hashed_oracle_agrees_with_quadratic():
    for seed in range(30):
        rels = random_set(seed, 2, 3, 2, 14)
        assert hashed_max_pieces(rels) == pairwise_max_pieces(rels)


def test_small_known_case():
    rels = [cyc("a b a b^-1"), cyc("a b a b")]
    S = SymmetrizedSet(rels)
    assert [e.max_piece_len for e in max_piece_lengths(S).entries] == [3, 3]
    v = check_c_prime(S, Fraction(1, 6))
    assert not v.passed and v.label == "FAIL"


def test_single_generator_power_has_no_pieces():
    # every rotation of a^5 is a^5, so the closure is {a^5, a^-5}
    S = SymmetrizedSet([cyc("a^5")])
    assert max_piece_lengths(S).max_piece == 0
    assert S.prefix_count(AB.parse("a^2")) == 1
    assert not S.is_piece(AB.parse("a"))


def test_prefix_count_counts_distinct_elements():
    S = SymmetrizedSet([cyc("a b a b^-1")])
    assert S.prefix_count(AB.parse("a")) == 2  # a b a b^-1 and a b^-1 a b
    assert S.prefix_count(AB.parse("a b")) == 1
    assert S.is_piece(AB.parse("b^-1"))
    assert not S.is_piece(AB.parse("a b"))


def test_truncation_and_coverage():
    rels = [cyc("a b a b^-1"), cyc("a^3 b^3 a b")]
    S = SymmetrizedSet(rels, truncation=4)
    assert len(S) == 1 and S.omitted_min == 8
    assert S.covers_below(8) and not S.covers_below(9)
    assert check_c_prime(SymmetrizedSet([cyc("a^2 b^2 a^-1 b^-1")]), 1).label == "PASS"
    assert check_c_prime(SymmetrizedSet([cyc("a^2 b^2 a^-1 b^-1")], omitted_min=50), 1).label == "PASS (truncated)"


def test_example_pieces_against_hashed_oracle(pair_14_15_hashed):
    fam = ExampleCF(15)
    rels = [fam.relator(14), fam.relator(15)]
    expect = pair_14_15_hashed
    got = [e.max_piece_len for e in max_piece_lengths(SymmetrizedSet(rels)).entries]
    assert got == expect == [448, 508]


def test_example_piece_bounds(example20):
    S = example20.symmetrized()
    report = max_piece_lengths(S)
    by = report.by_id()
    assert by["r15"].max_piece_len == 510
    for i in example20.indices():
        assert by[f"r{i}"].max_piece_len < 2 * (i + 1) ** 2
    assert check_c_prime_f(S, corrected_example(), report).passed


def test_c_prime_is_strict():
    S = SymmetrizedSet([cyc("a b a b^-1"), cyc("a b a b")])
    assert not check_c_prime(S, Fraction(3, 4)).passed
    assert check_c_prime(S, Fraction(3, 4) + Fraction(1, 100)).passed
    with pytest.raises(ValueError):
        check_c_prime(S, 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_factor_hits_match_brute(seed):
    rng = random.Random(seed)
    rels = [CyclicWord(random_cyclically_reduced(rng, 2, rng.randint(1, 10))) for _ in range(2)]
    w = Word(tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 15))))
    S = SymmetrizedSet(rels)
    for h in factor_hits(w, S):
        s = S.strings(h.relator)[int(h.inverted)]
        n = len(s)
        best = 0
        for a in range(len(w)):
            for b in range(n):
                k = 0
                while a + k < len(w) and k < n and w[a + k] == s[(b + k) % n]:
                    k += 1
                best = max(best, k)
        assert h.length == best
        assert all(w[h.pos_in_word + t] == s[(h.offset + t) % n] for t in range(h.length))


def test_longest_common_factor():
    u, v = AB.parse("a a b a b b"), AB.parse("b a b a")
    length, i, j = longest_common_factor(u, v)
    assert length == 3 and u[i : i + 3] == v[j : j + 3]
    assert longest_common_factor(Word(), v) == (0, 0, 0)


def test_pair_condition_upgrade():
    S = SymmetrizedSet([cyc("a b^2 a^3 b^4")], omitted_min=10**6)
    short = AB.parse("a")
    v = pair_condition(short, S, constant())
    assert v.passed and v.unconditional and v.label == "PASS"
    full = SymmetrizedSet([cyc("a b^2 a^3 b^4")])
    assert not pair_condition(AB.parse("a^3 b^4"), full, constant()).passed
    assert pair_condition(short, full, constant()).unconditional


def test_closure_helper_counts():
    assert len(closure_elements([cyc("a b a b^-1")])) == 8
    assert math.isinf(SymmetrizedSet([cyc("a")]).omitted_min)
