"""Order-statistic primitives with instrumented comparison counts.

select_rank is deterministic worst-case-linear selection (median-of-medians
with 5-element groups, 6-comparison group medians).  Every value comparison
it performs is counted; presorted inputs are answered by index arithmetic
with zero counted comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import ComparisonCounter, WeightItem


def _median5(a, b, c, d, e, cnt: ComparisonCounter):
    """Median of five items in exactly 6 counted comparisons."""
    cnt.count += 6
    if b < a:
        a, b = b, a
    if d < c:
        c, d = d, c
    if c < a:
        a, b, c, d = c, d, a, b
    # a is the smallest of {a,b,c,d}; median = 2nd smallest of {b, e, c, d}
    if e < b:
        b, e = e, b
    # now b <= e and c <= d
    if b < c:
        return c if c < e else e
    return b if b < d else d


def _small_median(group: list, cnt: ComparisonCounter):
    """Median (lower) of up to 4 items by counted insertion sort."""
    out = [group[0]]
    for x in group[1:]:
        i = len(out)
        while i > 0:
            cnt.count += 1
            if x < out[i - 1]:
                i -= 1
            else:
                break
        out.insert(i, x)
    return out[(len(out) + 1) // 2 - 1]


def _pivot(items: list, cnt: ComparisonCounter):
    medians = []
    n = len(items)
    for i in range(0, n - n % 5, 5):
        medians.append(_median5(items[i], items[i + 1], items[i + 2],
                                items[i + 3], items[i + 4], cnt))
    if n % 5:
        medians.append(_small_median(items[n - n % 5:], cnt))
    if len(medians) == 1:
        return medians[0]
    return _select(medians, (len(medians) + 1) // 2, cnt)[0]


def _select(items: list, t: int, cnt: ComparisonCounter):
    """t-th smallest (1-based) in the strict order, plus both remainders."""
    lows_acc: list = []
    highs_acc: list = []
    work = items
    while True:
        if len(work) == 1:
            assert t == 1
            return work[0], lows_acc, highs_acc
        if len(work) <= 32:
            # counted insertion sort; n(n-1)/2 comparisons stay below the
            # 24n selection budget for every n up to 49
            out = [work[0]]
            for x in work[1:]:
                i = len(out)
                while i > 0:
                    cnt.count += 1
                    if x < out[i - 1]:
                        i -= 1
                    else:
                        break
                out.insert(i, x)
            lows_acc.extend(out[:t - 1])
            highs_acc.extend(out[t:])
            return out[t - 1], lows_acc, highs_acc
        pivot = _pivot(work, cnt)
        lows = []
        highs = []
        push_lo = lows.append
        push_hi = highs.append
        cnt.count += len(work) - 1
        for x in work:
            if x is pivot:
                continue
            if x < pivot:
                push_lo(x)
            else:
                push_hi(x)
        k = len(lows) + 1
        if t == k:
            lows_acc.extend(lows)
            highs_acc.extend(highs)
            return pivot, lows_acc, highs_acc
        if t < k:
            highs_acc.append(pivot)
            highs_acc.extend(highs)
            work = lows
        else:
            lows_acc.extend(lows)
            lows_acc.append(pivot)
            work = highs
            t -= k


def select_rank(items: Sequence[WeightItem], t: int,
                counter: ComparisonCounter | None = None,
                presorted: bool = False):
    """Return (t-th item in the strict order, smaller ranks, larger ranks).

    The two remainder lists partition the input minus the selected element.
    Presorted inputs cost zero counted comparisons.
    """
    n = len(items)
    if not 1 <= t <= n:
        raise ValueError(f"rank {t} out of range 1..{n}")
    if presorted:
        return items[t - 1], list(items[:t - 1]), list(items[t:])
    cnt = counter if counter is not None else ComparisonCounter()
    return _select(list(items), t, cnt)


def find_median(items: Sequence[WeightItem],
                counter: ComparisonCounter | None = None,
                presorted: bool = False):
    """Lower median: select_rank with t = floor((n + 1) / 2)."""
    if not items:
        raise ValueError("median of empty list")
    return select_rank(items, (len(items) + 1) // 2, counter, presorted)


@dataclass(frozen=True)
class RankedGroup:
    """Rank-ordered blocks of (weights of one node, multiplicity)."""

    blocks: tuple[tuple[tuple[WeightItem, ...], int], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("empty group")
        for weights, mult in self.blocks:
            if mult != len(weights):
                raise ValueError("block multiplicity must equal its weight count")

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.blocks)

    @classmethod
    def from_weight_lists(cls, lists: Sequence[Sequence[WeightItem]]) -> "RankedGroup":
        return cls(tuple((tuple(ws), len(ws)) for ws in lists))


def weighted_median(group: RankedGroup, target: int):
    """First block whose cumulative multiplicity exceeds the target.

    Equivalently: the largest prefix of blocks with cumulative multiplicity
    at most ``target`` is put aside, and the next block is chosen.  Pure
    prefix-sum arithmetic; no value comparisons.
    """
    if not 0 <= target <= group.total_multiplicity:
        raise ValueError("target out of range")
    acc = 0
    for i, (weights, mult) in enumerate(group.blocks):
        if acc + mult > target:
            return i + 1, group.blocks[i], group.blocks[:i], group.blocks[i + 1:]
        acc += mult
    # target == total multiplicity: the last block is closest from below
    i = len(group.blocks) - 1
    return i + 1, group.blocks[i], group.blocks[:i], ()
