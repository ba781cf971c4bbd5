from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mrcode import (CodeLengthProfile, InvalidAssignmentError, LevelState,
                    WeightItem, WeightList, assignment_from_lengths,
                    code_cost, distinct_length_count, kraft_sum, monotone,
                    verify_exclusion)
from oracles import WORKED_COST, WORKED_VALUES


def profile(*lengths):
    return CodeLengthProfile(tuple(lengths))


def test_kraft_two_leaves():
    assert kraft_sum(profile(1, 1)) == 1


def test_kraft_worked_example_counts():
    lengths = [6] * 10 + [5] * 13 + [4] * 7
    assert kraft_sum(lengths) == 1


def test_kraft_missing_leaf():
    assert kraft_sum(profile(1, 2, 3)) == Fraction(7, 8)


def test_kraft_exact_fraction_fields():
    p = profile(1, 2, 3)
    assert (p.kraft_numerator, p.kraft_denominator) == (7, 8)


@given(st.lists(st.integers(min_value=1, max_value=24), min_size=1, max_size=40))
def test_kraft_matches_fraction_sum(lengths):
    assert kraft_sum(lengths) == sum(Fraction(1, 2**l) for l in lengths)


def test_code_cost_worked_example():
    w = WeightList.from_values(WORKED_VALUES)
    lengths = [6] * 10 + [5] * 10 + [5, 5, 5, 4, 4] + [4] * 5
    assert code_cost(w, profile(*lengths)) == WORKED_COST


def test_code_cost_trivial():
    w = WeightList.from_values([1, 1])
    assert code_cost(w, profile(1, 1)) == 2


def test_code_cost_exponential_weights():
    # ascending powers of two force a fully skewed tree
    w = WeightList.from_values([1, 2, 4, 8, 16])
    assert code_cost(w, profile(4, 4, 3, 2, 1)) == 56


def test_code_cost_size_mismatch():
    with pytest.raises(ValueError):
        code_cost(WeightList.from_values([1, 2]), profile(1))


def test_distinct_length_count():
    assert distinct_length_count(profile(1, 1)) == 1
    assert distinct_length_count(profile(*( [6] * 10 + [5] * 13 + [4] * 7 ))) == 3
    assert distinct_length_count(profile(4, 4, 3, 2, 1)) == 4


def test_weight_list_validation():
    with pytest.raises(ValueError):
        WeightList.from_values([0, 1])
    with pytest.raises(ValueError):
        WeightList.from_values([1, 2**63])
    with pytest.raises(ValueError):
        WeightList.from_values([3, 1, 2], sorted_flag=True)
    with pytest.raises(ValueError):
        WeightList((WeightItem(1, 0), WeightItem(1, 0)))


def test_sorted_copy():
    w = WeightList.from_values([5, 1, 3]).sorted_copy()
    assert w.sorted_flag and w.values() == [1, 3, 5]


def test_monotone():
    w = WeightList.from_values([10, 1, 5])
    assert monotone(w, profile(1, 3, 2))
    assert not monotone(w, profile(3, 1, 2))
    # ties may take different lengths in either order
    w2 = WeightList.from_values([4, 4, 1, 1])
    assert monotone(w2, profile(2, 1, 3, 3))


def worked_assignment():
    w = WeightList.from_values(WORKED_VALUES)
    levels = {
        0: [it for it in w.items if it.value == 2],
        1: [it for it in w.items if it.value == 3] + [it for it in w.items
                                                      if it.value == 5][:3],
        2: [it for it in w.items if it.value == 5][3:] + [it for it in w.items
                                                          if it.value == 9],
    }
    return w, LevelState.from_lists(levels)


def test_exclusion_worked_example_final_assignment():
    w, state = worked_assignment()
    ok, msg = verify_exclusion(w, state)
    assert ok, msg


def test_exclusion_two_equal_weights():
    w = WeightList.from_values([7, 7])
    ok, _ = verify_exclusion(w, LevelState.from_lists({0: list(w.items)}))
    assert ok


def test_exclusion_detects_misplaced_weight():
    # swapping a 9 down to level 0 (and a 2 up, to keep the counts pairable)
    # puts a 9 below the value-4 internals that level 0 produces
    w, state = worked_assignment()
    levels = {lv: list(items) for lv, items in state.levels.items()}
    nine = levels[2].pop()
    two = levels[0].pop(0)
    assert (nine.value, two.value) == (9, 2)
    levels[0].append(nine)
    levels[2].append(two)
    ok, msg = verify_exclusion(w, LevelState.from_lists(levels))
    assert not ok
    assert "smaller" in msg


def test_exclusion_rejects_unpairable_counts():
    # moving a single weight down breaks the parity a full tree needs; that
    # is a structural error, not a False verdict
    w, state = worked_assignment()
    levels = {lv: list(items) for lv, items in state.levels.items()}
    levels[0] = levels[0] + [levels[2].pop()]
    with pytest.raises(InvalidAssignmentError):
        verify_exclusion(w, LevelState.from_lists(levels))


def test_exclusion_structural_error_is_not_false():
    w = WeightList.from_values([1, 2, 3])
    state = LevelState.from_lists({0: list(w.items)})  # 3 leaves cannot pair
    with pytest.raises(InvalidAssignmentError):
        verify_exclusion(w, state)


def test_exclusion_requires_full_cover():
    w = WeightList.from_values([1, 2])
    with pytest.raises(InvalidAssignmentError):
        verify_exclusion(w, LevelState.from_lists({0: [w.items[0]]}))


def test_assignment_from_lengths_round_trip():
    w, state = worked_assignment()
    lengths = [0] * len(w)
    for lv, items in state.levels.items():
        for it in items:
            lengths[it.index] = 6 - lv
    rebuilt = assignment_from_lengths(w, profile(*lengths))
    assert {lv: sorted(items) for lv, items in rebuilt.levels.items()} == \
           {lv: sorted(items) for lv, items in state.levels.items()}
