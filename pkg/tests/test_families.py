import math
from fractions import Fraction

import pytest

from smallcancel.families import (
    ExampleCF,
    FamilyError,
    GenerationBudgetExceeded,
    LevelFamily,
    LevelWordId,
    block_alignment_violations,
    derived_viable,
    example_cf_length,
    gen_base_disjoint,
    gen_random_presentation,
    make_family,
    occurrences,
    structure_violations,
)
from smallcancel.pieces import check_c_prime
from smallcancel.viable import corrected_example
from smallcancel.words import is_non_periodic


def test_base_disjoint():
    rels = gen_base_disjoint(28)
    assert [len(r) for r in rels] == [28, 28, 28]
    assert rels[0].letters == tuple(range(29, 57))
    assert set(rels[2].letters).isdisjoint(rels[1].letters)
    with pytest.raises(FamilyError):
        gen_base_disjoint(27)


def test_level_lengths(level3):
    assert [len(r) for _, r in level3.members()] == [28] * 3 + [1568] * 3 + [87808] * 3
    for k in (1, 2, 3):
        assert level3.relator_length(1, k) == (2 * 28) ** (k - 1) * 28
    assert level3.omitted_min() == 56**3 * 28
    assert [rid for rid, _ in level3.members(2000)] == ["r1^1", "r2^1", "r3^1", "r1^2", "r2^2", "r3^2"]


def test_level_word_recursion(level3):
    y = level3.level_word(LevelWordId(1, 3, 2))
    parts = []
    for j in range(1, 29):
        parts += list(level3.level_word(LevelWordId(1, 3, 1))) + list(level3.level_word(LevelWordId(2, j, 1)))
    assert list(y) == parts
    assert len(y) == level3.word_length(2) == 56


def test_level_relators_are_positive_and_non_periodic(level3):
    for _, r in level3.members(2000):
        assert r.representative.is_positive()
        assert is_non_periodic(r)


def test_modified_tail(level3_modified):
    fam = level3_modified
    a = fam.tail_letter
    assert fam.relator_length(3, 1) == 28  # 42 > 28: no tail
    assert fam.relator(3, 2).letters[-2:] == (a, a)
    assert fam.relator(3, 3).letters[-3:] == (a, a, a)
    assert len(fam.relator(3, 3)) == 87811
    assert fam.relator(1, 3) == LevelFamily(28, 28, 3).relator(1, 3)


def test_structure_of_blocks(level3):
    for k in (2, 3):
        for kl in range(1, k):
            for i in (1, 2, 3):
                blocks = level3.relator_blocks(i, k, kl)
                assert structure_violations(blocks) == []
                assert structure_violations(blocks, cyclic=True) == []
                m = level3.word_length(kl)
                r = level3.relator(i, k).letters
                for t in (0, 1, len(blocks) - 1):
                    assert r[t * m : (t + 1) * m] == level3.level_word(LevelWordId(*blocks[t], kl))


def test_structure_detects_repeats():
    assert structure_violations([(1, 1), (1, 2), (2, 1)]) == ["i_1 == i_2"]
    assert "three equal first indices at block 2" in structure_violations([(2, 1), (1, 1), (1, 2), (1, 3), (2, 1)])


def test_alignment_level_two(level3):
    assert block_alignment_violations(level3, 2, 2) == []
    assert block_alignment_violations(level3, 1, 2) == []


def test_occurrences():
    assert occurrences([1, 2], [1, 2, 1, 2, 1]) == [0, 2]
    assert occurrences([300], [1, 300, 300]) == [1, 2]


def test_level_validation():
    with pytest.raises(FamilyError):
        LevelFamily(28, 30)
    with pytest.raises(FamilyError):
        LevelWordId(4, 1, 1)


def test_example_cf():
    fam = ExampleCF(16)
    assert fam.lengths() == [example_cf_length(i) for i in (14, 15, 16)]
    assert example_cf_length(14) == 29 * 211 == 6119
    r = fam.relator(14).letters
    assert r[:3] == (1, 2, 2) and r.count(1) == 29 and len(r) == 6119
    assert fam.omitted_min() == example_cf_length(17)
    assert fam.omitted_min(7000) == example_cf_length(15)
    with pytest.raises(FamilyError):
        fam.relator(13)


def test_derived_viable():
    fam = ExampleCF(20)
    g = derived_viable(corrected_example(), fam.lengths(), first_index=14)
    n14, n15 = example_cf_length(14), example_cf_length(15)
    assert g(n14 - 1) == corrected_example()(n14 - 1) == 9
    assert g(n14) == 7 and g(n15) == Fraction(15, 2)
    assert g(10**7) == min(corrected_example()(10**7), 10)
    with pytest.raises(FamilyError):
        derived_viable(corrected_example(), [10, 5])


@pytest.mark.parametrize("gens,rels", [(2, 1), (3, 1), (3, 2)])
def test_random_presentations(gens, rels):
    for seed in range(5):
        fp = gen_random_presentation(gens, rels, (12, 24), seed=seed)
        assert len(fp.relators) == rels
        assert all(is_non_periodic(r) and 12 <= len(r) <= 24 for r in fp.relators)
        assert check_c_prime(fp.symmetrized(), Fraction(1, 6)).passed
        assert fp.relators == gen_random_presentation(gens, rels, (12, 24), seed=seed).relators


def test_random_budget_exhaustion():
    # two generators give only 12 reduced two-letter words: a length-12
    # relator has 24 closure elements, so two of them share a piece of length 2
    with pytest.raises(GenerationBudgetExceeded):
        gen_random_presentation(2, 1, 12, seed=7, attempts=2000)


def test_make_family():
    assert math.isinf(make_family("base-disjoint").omitted_min())
    assert isinstance(make_family("level-modified"), LevelFamily)
    with pytest.raises(FamilyError):
        make_family("nope")
