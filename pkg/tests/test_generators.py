import pytest

from mrcode import WeightList, construct_lengths, huffman_lengths, code_cost
from mrcode import generators


def test_families_are_deterministic():
    for family in generators.FAMILIES:
        n = 16
        a = generators.generate(family, n, seed=7)
        b = generators.generate(family, n, seed=7)
        c = generators.generate(family, n, seed=8)
        assert a == b
        if family != "exponential":
            assert a != c


def test_example41_shape():
    values = generators.example41(16, seed=1)
    assert len(values) == 26
    w = WeightList.from_values(values)
    profile, stats = construct_lengths(w)
    assert stats.distinct_lengths == 3
    counts = {l: profile.lengths.count(l) for l in set(profile.lengths)}
    assert counts == {6: 16, 5: 8, 2: 2}


def test_example41_rejects_bad_n():
    with pytest.raises(ValueError):
        generators.example41(12)
    with pytest.raises(ValueError):
        generators.example41(2)


def test_equal_family_lengths():
    w = WeightList.from_values(generators.generate("equal", 8, seed=2))
    profile, _ = construct_lengths(w)
    assert set(profile.lengths) == {3}


def test_exponential_family_lengths():
    values = generators.generate("exponential", 5)
    profile, _ = construct_lengths(WeightList.from_values(values))
    assert profile.lengths == (4, 4, 3, 2, 1)


def test_all_families_build_optimal_codes():
    for family in generators.FAMILIES:
        n = 16
        values = generators.generate(family, n, seed=5)
        w = WeightList.from_values(values)
        profile, stats = construct_lengths(w)
        assert code_cost(w, profile) == code_cost(w, huffman_lengths(w))
        assert stats.iterations <= 2 * stats.distinct_lengths


def test_unknown_family():
    with pytest.raises(ValueError):
        generators.generate("nope", 4)
