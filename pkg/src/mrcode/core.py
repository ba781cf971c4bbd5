"""Shared domain types and validators for minimum-redundancy prefix codes.

Weights are positive integers tagged with their original input position.
Levels are numbered bottom-up: the deepest leaves sit at level 0 and the
codeword length of a weight at level ``eta`` is ``root_level - eta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

MAX_WEIGHT = 2**63 - 1


class InvalidAssignmentError(ValueError):
    """A level assignment cannot be completed into a full binary tree."""


class ComparisonCounter:
    """Counts order comparisons between weight values and/or node values.

    Only value-vs-value comparisons count.  Index arithmetic, prefix sums,
    rank bookkeeping and tie-breaks on original indices are free.
    """

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def add(self, n: int = 1) -> None:
        self.count += n

    def less(self, a, b) -> bool:
        self.count += 1
        return a < b


class WeightItem(NamedTuple):
    """One input weight with its original 0-based position.

    Tuple ordering (value, then index) is exactly the strict tie-broken
    order used everywhere: equal values rank by smaller original index.
    """

    value: int
    index: int


class LevelTraceEntry(NamedTuple):
    level: int
    assigned: int
    moved: int


def _check_items(items: Sequence[WeightItem]) -> None:
    seen = set()
    for it in items:
        if not 1 <= it.value <= MAX_WEIGHT:
            raise ValueError(f"weight {it.value} out of range [1, 2^63-1]")
        if it.index in seen:
            raise ValueError(f"duplicate weight index {it.index}")
        seen.add(it.index)


@dataclass(frozen=True)
class WeightList:
    """The input multiset of weights, optionally declared presorted.

    When ``sorted_flag`` is set the sequence must be non-decreasing by value
    with ties in ascending index order, so that list position agrees with
    the strict order.  Presorted lists admit selection by pure index
    arithmetic (zero counted comparisons).
    """

    items: tuple[WeightItem, ...]
    sorted_flag: bool = False

    def __post_init__(self) -> None:
        _check_items(self.items)
        indices = sorted(it.index for it in self.items)
        if indices != list(range(len(self.items))):
            raise ValueError("weight indices must cover 0..n-1 exactly once")
        if self.sorted_flag:
            for a, b in zip(self.items, self.items[1:]):
                if b < a:
                    raise ValueError("sorted_flag set but sequence is not "
                                     "non-decreasing in (value, index) order")

    @classmethod
    def from_values(cls, values: Iterable[int], sorted_flag: bool = False) -> "WeightList":
        items = tuple(WeightItem(int(v), i) for i, v in enumerate(values))
        return cls(items, sorted_flag)

    def sorted_copy(self) -> "WeightList":
        """Same multiset, re-indexed in ascending value order, flagged sorted."""
        vals = sorted(it.value for it in self.items)
        return WeightList.from_values(vals, sorted_flag=True)

    def __len__(self) -> int:
        return len(self.items)

    def values(self) -> list[int]:
        return [it.value for it in self.items]


@dataclass(frozen=True)
class CodeLengthProfile:
    """Per-input-index codeword lengths with exact Kraft accounting."""

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.lengths:
            raise ValueError("empty length profile")
        if any(l < 1 for l in self.lengths):
            raise ValueError("codeword lengths must be >= 1")

    @property
    def kraft(self) -> Fraction:
        return kraft_sum(self.lengths)

    @property
    def kraft_numerator(self) -> int:
        return self.kraft.numerator

    @property
    def kraft_denominator(self) -> int:
        return self.kraft.denominator

    def __len__(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class LevelState:
    """Leaf-bearing levels of a partially or fully built tree.

    Maps each level to its leaves; internal nodes are never stored, they
    are implied by sorted pairing of the nodes one level down.
    """

    levels: Mapping[int, tuple[WeightItem, ...]]

    def __post_init__(self) -> None:
        for lv, items in self.levels.items():
            if lv < 0:
                raise ValueError("levels are non-negative")
            if not items:
                raise ValueError(f"level {lv} present but empty")
        all_items = [it for items in self.levels.values() for it in items]
        _check_items(all_items)

    @classmethod
    def from_lists(cls, levels: Mapping[int, Sequence[WeightItem]]) -> "LevelState":
        return cls({lv: tuple(items) for lv, items in levels.items() if items})

    def leaf_count(self, level: int) -> int:
        return len(self.levels.get(level, ()))

    def top_level(self) -> int:
        return max(self.levels)

    def total(self) -> int:
        return sum(len(v) for v in self.levels.values())


@dataclass(frozen=True)
class ConstructionStats:
    """Instrumentation of one construction run.

    ``iterations`` counts assignment events: levels that received at least
    one weight, including level 0.  The trace carries one entry per event
    (level, weights assigned, subtrees moved up by the preceding Kraft
    fix-up) plus a final entry for the terminal power-of-two adjustment.
    """

    iterations: int
    weight_comparisons: int | None
    distinct_lengths: int
    trace: tuple[LevelTraceEntry, ...]


def kraft_sum(lengths: Sequence[int] | CodeLengthProfile) -> Fraction:
    """Exact dyadic value of sum(2^-l) over the profile; no floating point."""
    if isinstance(lengths, CodeLengthProfile):
        lengths = lengths.lengths
    if not lengths:
        return Fraction(0)
    if any(l < 1 for l in lengths):
        raise ValueError("codeword lengths must be >= 1")
    top = max(lengths)
    num = sum(1 << (top - l) for l in lengths)
    return Fraction(num, 1 << top)


def code_cost(weights: WeightList, lengths: CodeLengthProfile) -> int:
    """Exact weighted length sum(w_i * l_i), index-aligned."""
    if len(weights) != len(lengths):
        raise ValueError("weights and lengths must have equal size")
    ls = lengths.lengths
    return sum(it.value * ls[it.index] for it in weights.items)


def distinct_length_count(lengths: CodeLengthProfile) -> int:
    return len(set(lengths.lengths))


def monotone(weights: WeightList, lengths: CodeLengthProfile) -> bool:
    """True iff a strictly larger weight never gets a longer codeword."""
    if len(weights) != len(lengths):
        raise ValueError("weights and lengths must have equal size")
    by_value: dict[int, list[int]] = {}
    for it in weights.items:
        by_value.setdefault(it.value, []).append(lengths.lengths[it.index])
    prev_min: int | None = None
    for value in sorted(by_value):
        lens = by_value[value]
        if prev_min is not None and max(lens) > prev_min:
            return False
        prev_min = min(lens)
    return True


def assignment_from_lengths(weights: WeightList, lengths: CodeLengthProfile) -> LevelState:
    """Bottom-up level of each weight: longest codewords sit at level 0."""
    if len(weights) != len(lengths):
        raise ValueError("weights and lengths must have equal size")
    top = max(lengths.lengths)
    levels: dict[int, list[WeightItem]] = {}
    for it in weights.items:
        levels.setdefault(top - lengths.lengths[it.index], []).append(it)
    return LevelState.from_lists(levels)


def verify_exclusion(weights: WeightList, assignment: LevelState) -> tuple[bool, str | None]:
    """Check that node values never decrease when moving up a level.

    Internal node values are reconstructed level by level using sorted
    pairing (consecutive nodes in the strict order are siblings).  Returns
    (True, None) or (False, description of the first violation).  A level
    distribution that cannot form a full binary tree raises
    InvalidAssignmentError, which is distinct from a False verdict.

    O(n log n); a verifier only, never on the construction hot path.
    """
    assigned = sorted(it.index for items in assignment.levels.values() for it in items)
    if assigned != sorted(it.index for it in weights.items):
        raise InvalidAssignmentError("assignment does not cover the weights exactly")
    n = len(weights)
    if n == 1:
        return True, None

    top = assignment.top_level()
    # nodes are (value, min original index); leaves and internals compare alike
    internals: list[tuple[int, int]] = []
    max_below: tuple[int, int] | None = None  # (value, level) for messages
    level = 0
    while True:
        leaves = [(it.value, it.index) for it in assignment.levels.get(level, ())]
        nodes = sorted(internals + leaves)
        if nodes:
            if max_below is not None and nodes[0][0] < max_below[0]:
                return False, (f"level {level}: node value {nodes[0][0]} is smaller "
                               f"than value {max_below[0]} at level {max_below[1]}")
            if max_below is None or nodes[-1][0] > max_below[0]:
                max_below = (nodes[-1][0], level)
        if level >= top:
            if len(nodes) == 1:
                return True, None
            if len(nodes) & (len(nodes) - 1):
                raise InvalidAssignmentError(
                    f"level {level}: {len(nodes)} nodes above the top leaf level "
                    f"cannot pair into a full binary tree")
        if len(nodes) % 2:
            raise InvalidAssignmentError(
                f"level {level}: odd node count {len(nodes)} below the top level")
        internals = [(nodes[i][0] + nodes[i + 1][0], min(nodes[i][1], nodes[i + 1][1]))
                     for i in range(0, len(nodes), 2)]
        level += 1
