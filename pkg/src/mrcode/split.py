"""Splitting engine: rank and median queries on implied tree levels.

Nodes at a context level are the leaves assigned to that level plus the
internal nodes implied by sorted pairing of everything below; this module
locates the weighted-by-multiplicity median node (the "splitting node"),
or the t-th smallest/largest node, while evaluating only the handful of
internal nodes the pruning actually touches.

A slice holds the weights of a run of consecutive-rank nodes, bucketed by
assigned level.  Each bucket is a list of contiguous segments (a rope), so
catenating partial results never copies weight data.  Presorted slices
answer leaf medians by index arithmetic; sums come from shared prefix-sum
arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Mapping, Sequence

from .core import ComparisonCounter, InvalidAssignmentError, LevelState, WeightItem
from .selection import select_rank


class _Seg:
    """Contiguous run arr[lo:hi] of one level's weights."""

    __slots__ = ("arr", "lo", "hi", "psum")

    def __init__(self, arr, lo, hi, psum=None):
        self.arr = arr
        self.lo = lo
        self.hi = hi
        self.psum = psum

    def __len__(self):
        return self.hi - self.lo

    def items(self):
        return self.arr[self.lo:self.hi]

    def total(self):
        if self.psum is not None:
            return self.psum[self.hi] - self.psum[self.lo]
        return sum(it[0] for it in self.arr[self.lo:self.hi])


def _psum(arr):
    return [0] + list(accumulate(it[0] for it in arr))


def _seg_of(items, presorted):
    arr = list(items)
    return _Seg(arr, 0, len(arr), _psum(arr) if presorted else None)


class _Env:
    __slots__ = ("presorted", "cnt")

    def __init__(self, presorted, cnt):
        self.presorted = presorted
        self.cnt = cnt


class LeafSlice:
    """Weights of consecutive-rank nodes, grouped by assigned level."""

    __slots__ = ("segs", "n", "presorted")

    def __init__(self, segs: dict[int, list[_Seg]], n: int, presorted: bool):
        self.segs = segs
        self.n = n
        self.presorted = presorted

    @classmethod
    def from_levels(cls, levels: Mapping[int, Sequence[WeightItem]],
                    presorted: bool = False) -> "LeafSlice":
        segs: dict[int, list[_Seg]] = {}
        n = 0
        for lv in sorted(levels):
            items = list(levels[lv])
            if not items:
                continue
            if presorted:
                for a, b in zip(items, items[1:]):
                    if b < a:
                        raise ValueError(f"level {lv} is not in ascending order")
            segs[lv] = [_seg_of(items, presorted)]
            n += len(items)
        return cls(segs, n, presorted)

    @classmethod
    def from_state(cls, state: LevelState, presorted: bool = False) -> "LeafSlice":
        return cls.from_levels(state.levels, presorted)

    def levels(self) -> list[int]:
        return sorted(lv for lv, segs in self.segs.items() if segs)

    def level_items(self, level: int) -> list[WeightItem]:
        out: list[WeightItem] = []
        for s in self.segs.get(level, ()):
            out.extend(s.items())
        return out

    def all_items(self) -> list[WeightItem]:
        out: list[WeightItem] = []
        for lv in self.levels():
            out.extend(self.level_items(lv))
        return out

    def level_count(self, level: int) -> int:
        return sum(len(s) for s in self.segs.get(level, ()))

    def total_value(self) -> int:
        return sum(s.total() for segs in self.segs.values() for s in segs)

    def min_index(self) -> int:
        return min(it[1] for segs in self.segs.values() for s in segs
                   for it in s.arr[s.lo:s.hi])

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class SplitResult:
    """Outcome of a splitting query at some context level.

    ``pos`` is the 1-based rank of the splitting node among the nodes it
    was selected from; ``chi_weights`` are the weights contributing to it;
    ``lower``/``upper`` hold the weights of the smaller-/larger-rank nodes.
    """

    pos: int
    chi_weights: tuple[WeightItem, ...]
    lower: LeafSlice
    upper: LeafSlice


def _empty(env) -> LeafSlice:
    return LeafSlice({}, 0, env.presorted)


def _of(level, segs, env) -> LeafSlice:
    n = sum(len(s) for s in segs)
    if n == 0:
        return LeafSlice({}, 0, env.presorted)
    return LeafSlice({level: list(segs)}, n, env.presorted)


def _one(level, item, env) -> LeafSlice:
    arr = [item]
    return LeafSlice({level: [_Seg(arr, 0, 1, [0, item[0]])]}, 1, env.presorted)


def _cat(parts: Iterable[LeafSlice], env) -> LeafSlice:
    segs: dict[int, list[_Seg]] = {}
    n = 0
    for part in parts:
        if part.n == 0:
            continue
        for lv, ss in part.segs.items():
            segs.setdefault(lv, []).extend(ss)
        n += part.n
    return LeafSlice(segs, n, env.presorted)


def _below(sl: LeafSlice, level: int) -> LeafSlice:
    segs = {}
    n = 0
    for lv, ss in sl.segs.items():
        if lv < level and ss:
            segs[lv] = ss
            n += sum(len(s) for s in ss)
        elif lv > level and ss:
            raise InvalidAssignmentError(f"slice holds weights above level {level}")
    return LeafSlice(segs, n, sl.presorted)


def _leaf_select(segs: list[_Seg], t: int, env):
    """t-th smallest leaf of the window; returns (item, lo, hi, nlo, nhi)."""
    total = sum(s.hi - s.lo for s in segs)
    assert 1 <= t <= total
    if total == 1:
        return segs[0].arr[segs[0].lo], [], [], 0, 0
    if env.presorted:
        acc = 0
        for i, s in enumerate(segs):
            ln = len(s)
            if acc + ln >= t:
                off = t - acc - 1
                item = s.arr[s.lo + off]
                lo = list(segs[:i])
                if off:
                    lo.append(_Seg(s.arr, s.lo, s.lo + off, s.psum))
                hi = []
                if s.lo + off + 1 < s.hi:
                    hi.append(_Seg(s.arr, s.lo + off + 1, s.hi, s.psum))
                hi.extend(segs[i + 1:])
                return item, lo, hi, t - 1, total - t
            acc += ln
        raise AssertionError("unreachable")
    flat: list[WeightItem] = []
    for s in segs:
        flat.extend(s.arr[s.lo:s.hi])
    item, lows, highs = select_rank(flat, t, env.cnt)
    lo = [_seg_of(lows, False)] if lows else []
    hi = [_seg_of(highs, False)] if highs else []
    return item, lo, hi, len(lows), len(highs)


def _leaf_above_node(item: WeightItem, node_value: int, node: LeafSlice, env) -> bool:
    """One counted comparison; value ties fall back to smallest original index."""
    env.cnt.count += 1
    if item[0] != node_value:
        return item[0] > node_value
    return item[1] > node.min_index()


def node_count(level: int, sl: LeafSlice) -> int:
    """Number of nodes at `level` implied by the slice, by pure arithmetic."""
    if sl.n == 0:
        return 0
    m = 0
    prev = None
    for lv in sl.levels():
        if lv > level:
            raise InvalidAssignmentError(f"slice holds weights above level {level}")
        if prev is not None:
            gap = lv - prev
            if m & ((1 << gap) - 1):
                raise InvalidAssignmentError("slice does not fold into whole nodes")
            m >>= gap
        m += sl.level_count(lv)
        prev = lv
    gap = level - prev
    if m & ((1 << gap) - 1):
        raise InvalidAssignmentError("slice does not fold into whole nodes")
    return m >> gap


def _fsa(level: int, sl: LeafSlice, env: _Env):
    """Splitting node among all nodes at `level`; (pos, chi, lower, upper)."""
    if sl.n == 0:
        raise ValueError("empty slice")
    wbelow = _below(sl, level)
    wsegs = list(sl.segs.get(level, ()))
    nleaf = sl.n - wbelow.n
    if wbelow.n == 0:
        mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
        return nlo + 1, _one(level, mid, env), _of(level, lo, env), _of(level, hi, env)

    s1 = sl.n // 2
    s2 = sl.n - s1 - 1
    o1: list[LeafSlice] = []
    o2r: list[tuple[LeafSlice, ...]] = []
    pos = 1
    p, chi, p1, p2 = _fsi(level, wbelow, env)
    chi_val = chi.total_value()
    mid = lo = hi = None
    nlo = nhi = 0
    if nleaf:
        mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
    while nleaf:
        if _leaf_above_node(mid, chi_val, chi, env):
            if nlo + p1.n + chi.n > s1:
                o2r.append((_one(level, mid, env), _of(level, hi, env)))
                s2 -= 1 + nhi
                wsegs, nleaf = lo, nlo
                if nleaf:
                    mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
            else:
                o1.append(p1)
                o1.append(chi)
                s1 -= p1.n + chi.n
                pos += p
                wbelow = p2
                if wbelow.n == 0:
                    break
                p, chi, p1, p2 = _fsi(level, wbelow, env)
                chi_val = chi.total_value()
        else:
            if nhi + chi.n + p2.n > s2:
                o1.append(_of(level, lo, env))
                o1.append(_one(level, mid, env))
                s1 -= nlo + 1
                pos += nlo + 1
                wsegs, nleaf = hi, nhi
                if nleaf:
                    mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
            else:
                o2r.append((chi, p2))
                s2 -= chi.n + p2.n
                wbelow = p1
                if wbelow.n == 0:
                    break
                p, chi, p1, p2 = _fsi(level, wbelow, env)
                chi_val = chi.total_value()

    if wbelow.n == 0:
        # the splitting node is a leaf; narrow within the leaf window
        while nlo > s1 or nhi > s2:
            if nlo > s1 and nhi > s2:
                raise AssertionError("both flank budgets exceeded")
            if nhi > s2:
                o1.append(_of(level, lo, env))
                o1.append(_one(level, mid, env))
                s1 -= nlo + 1
                pos += nlo + 1
                wsegs = hi
            else:
                o2r.append((_one(level, mid, env), _of(level, hi, env)))
                s2 -= 1 + nhi
                wsegs = lo
            nleaf = sum(len(s) for s in wsegs)
            mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
        o1.append(_of(level, lo, env))
        o2r.append((_of(level, hi, env),))
        pos += nlo
        chi_out = _one(level, mid, env)
    else:
        # the splitting node is internal; narrow within the internal window
        while p1.n > s1 or p2.n > s2:
            if p1.n > s1 and p2.n > s2:
                raise AssertionError("both flank budgets exceeded")
            if p2.n > s2:
                o1.append(p1)
                o1.append(chi)
                s1 -= p1.n + chi.n
                pos += p
                wbelow = p2
            else:
                o2r.append((chi, p2))
                s2 -= chi.n + p2.n
                wbelow = p1
            p, chi, p1, p2 = _fsi(level, wbelow, env)
        o1.append(p1)
        o2r.append((p2,))
        pos += p - 1
        chi_out = chi
    upper = _cat((s for batch in reversed(o2r) for s in batch), env)
    return pos, chi_out, _cat(o1, env), upper


def _fsi(level: int, sl: LeafSlice, env: _Env):
    """Splitting node of the internal nodes at `level`, whose leaves are `sl`.

    Locates the splitting node one leaf level down, then widens it to the
    enclosing whole internal node: the largest `off` nodes below and the
    smallest `span - off - 1` nodes above join the chosen one.
    """
    levels = sl.levels()
    if not levels:
        raise ValueError("empty slice")
    h = levels[-1]
    if h >= level:
        raise InvalidAssignmentError(f"slice holds weights at or above level {level}")
    alpha, chi, o1, o2 = _fsa(h, sl, env)
    span = 1 << (level - h)
    off = (alpha - 1) & (span - 1)
    if off:
        keep = node_count(h, o1) - off
        o1, extra = _rank_split(h, o1, keep, env)
        chi = _cat((extra, chi), env)
    rest = span - off - 1
    if rest:
        extra, o2 = _rank_split(h, o2, rest, env)
        chi = _cat((chi, extra), env)
    return -(-alpha // span), chi, o1, o2


def _rank_split(level: int, sl: LeafSlice, t: int, env: _Env):
    """Split the slice's nodes at `level` after the t-th smallest rank."""
    if t == 0:
        return _empty(env), sl
    total = node_count(level, sl)
    if t == total:
        return sl, _empty(env)
    if not 0 < t < total:
        raise ValueError(f"rank {t} out of range 1..{total}")

    wbelow = _below(sl, level)
    wsegs = list(sl.segs.get(level, ()))
    nleaf = sl.n - wbelow.n
    if wbelow.n == 0:
        mid, lo, hi, nlo, nhi = _leaf_select(wsegs, t, env)
        first = _cat((_of(level, lo, env), _one(level, mid, env)), env)
        return first, _of(level, hi, env)
    if nleaf == 0:
        h = wbelow.levels()[-1]
        return _rank_split(h, wbelow, t << (level - h), env)

    need = t
    a_parts: list[LeafSlice] = []
    b_batches: list[tuple[LeafSlice, ...]] = []
    mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
    p, chi, p1, p2 = _fsi(level, wbelow, env)
    chi_val = chi.total_value()
    while True:
        if _leaf_above_node(mid, chi_val, chi, env):
            # chi is the smaller probe: its rank is at most p + nlo
            if p + nlo <= need:
                a_parts.append(p1)
                a_parts.append(chi)
                need -= p
                wbelow = p2
                if need == 0:
                    b_batches.append((_of(level, wsegs, env), wbelow))
                    break
                if wbelow.n == 0:
                    mid, lo, hi, nlo, nhi = _leaf_select(wsegs, need, env)
                    a_parts.append(_of(level, lo, env))
                    a_parts.append(_one(level, mid, env))
                    b_batches.append((_of(level, hi, env),))
                    break
                p, chi, p1, p2 = _fsi(level, wbelow, env)
                chi_val = chi.total_value()
            else:
                # mid's rank is at least nlo + p + 1 > need
                b_batches.append((_one(level, mid, env), _of(level, hi, env)))
                wsegs, nleaf = lo, nlo
                if nleaf == 0:
                    h = wbelow.levels()[-1]
                    a2, b2 = _rank_split(h, wbelow, need << (level - h), env)
                    a_parts.append(a2)
                    b_batches.append((b2,))
                    break
                mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
        else:
            # mid is the smaller probe: its rank is at most nlo + p
            if nlo + p <= need:
                a_parts.append(_of(level, lo, env))
                a_parts.append(_one(level, mid, env))
                need -= nlo + 1
                wsegs, nleaf = hi, nhi
                if need == 0:
                    b_batches.append((_of(level, wsegs, env), wbelow))
                    break
                if nleaf == 0:
                    h = wbelow.levels()[-1]
                    a2, b2 = _rank_split(h, wbelow, need << (level - h), env)
                    a_parts.append(a2)
                    b_batches.append((b2,))
                    break
                mid, lo, hi, nlo, nhi = _leaf_select(wsegs, (nleaf + 1) // 2, env)
            else:
                # chi's rank is at least p + nlo + 1 > need
                b_batches.append((chi, p2))
                wbelow = p1
                if wbelow.n == 0:
                    mid, lo, hi, nlo, nhi = _leaf_select(wsegs, need, env)
                    a_parts.append(_of(level, lo, env))
                    a_parts.append(_one(level, mid, env))
                    b_batches.append((_of(level, hi, env),))
                    break
                p, chi, p1, p2 = _fsi(level, wbelow, env)
                chi_val = chi.total_value()
    first = _cat(a_parts, env)
    rest = _cat((s for batch in reversed(b_batches) for s in batch), env)
    return first, rest


# ---------------------------------------------------------------- public API

def add_weights(weights: Iterable[WeightItem] | LeafSlice) -> int:
    """Exact value of the node made of these weights (0 for none)."""
    if isinstance(weights, LeafSlice):
        return weights.total_value()
    return sum(it[0] for it in weights)


def cut(level: int, sl: LeafSlice) -> tuple[list[WeightItem], LeafSlice]:
    """Split a slice into (leaves at `level`, everything strictly below)."""
    below = _below(sl, level)  # raises if anything sits above `level`
    return sl.level_items(level), below


def _env_for(sl: LeafSlice, counter: ComparisonCounter | None) -> _Env:
    return _Env(sl.presorted, counter if counter is not None else ComparisonCounter())


def find_splitting_all(level: int, sl: LeafSlice,
                       counter: ComparisonCounter | None = None) -> SplitResult:
    """Splitting node among all nodes (leaves and internals) at `level`."""
    env = _env_for(sl, counter)
    pos, chi, lower, upper = _fsa(level, sl, env)
    return SplitResult(pos, tuple(sorted(chi.all_items(), key=lambda it: it[1])),
                       lower, upper)


def find_splitting_internal(level: int, sl: LeafSlice,
                            counter: ComparisonCounter | None = None) -> SplitResult:
    """Splitting node of the internal nodes at `level`; `sl` holds their leaves."""
    env = _env_for(sl, counter)
    pos, chi, lower, upper = _fsi(level, sl, env)
    return SplitResult(pos, tuple(sorted(chi.all_items(), key=lambda it: it[1])),
                       lower, upper)


def find_t_smallest(t: int, level: int, sl: LeafSlice,
                    counter: ComparisonCounter | None = None) -> tuple[LeafSlice, LeafSlice]:
    """Weights of the t smallest-rank nodes at `level`, and the remainder."""
    total = node_count(level, sl)
    if not 1 <= t <= total:
        raise ValueError(f"t={t} out of range 1..{total}")
    env = _env_for(sl, counter)
    return _rank_split(level, sl, t, env)


def find_t_largest(t: int, level: int, sl: LeafSlice,
                   counter: ComparisonCounter | None = None) -> tuple[LeafSlice, LeafSlice]:
    """The remainder, and the weights of the t largest-rank nodes at `level`."""
    total = node_count(level, sl)
    if not 1 <= t <= total:
        raise ValueError(f"t={t} out of range 1..{total}")
    env = _env_for(sl, counter)
    return _rank_split(level, sl, total - t, env)
