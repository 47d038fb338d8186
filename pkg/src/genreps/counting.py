"""Square tables and square counting under an equivalence relation.

Pipeline: the suffix index yields all right non-extendible squares (leaf
pairs of the tree view whose lowest common ancestor weight equals their
distance, found by a small-to-large scan); an LCP test filters those down
to right non-shiftable squares; running the same machinery on the reversed
text gives the left non-shiftable squares; sorted pairing of the two sets
produces, per half-period p, the disjoint maximal intervals of square
start positions.  A single left-to-right sweep over interval endpoints
with a cursor counter then counts squares at their leftmost occurrences,
using the longest-previous-factor array under the relation (non-equivalent
count) or under equality (distinct-as-strings count).
"""

from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .encodings import REVERSED_RELATION
from .index import ScerIndex, TreeView
from .text import Text

_NUMPY_MIN_NODES = 20000


def right_nonextendible(index: ScerIndex) -> list[tuple[int, int]]:
    """All (i, p) with T[i..i+2p) a right non-extendible square.

    These are exactly the pairs of suffixes (i, i+p) whose longest common
    equivalent prefix is p, i.e. leaf pairs at distance p whose LCA weight
    is p in the tree view; listed via small-to-large over leaf ranges.
    """
    n = index.n
    if n < 2:
        return []
    tree = index.tree()
    if len(tree.weight) >= _NUMPY_MIN_NODES:
        return _rne_numpy(tree, n)
    return _rne_python(tree, n)


def _rne_python(tree: TreeView, n: int) -> list[tuple[int, int]]:
    order = tree.order
    leaf_pos = tree.leaf_pos
    out: set[tuple[int, int]] = set()
    for v in range(len(tree.weight)):
        kids = tree.children[v]
        w = tree.weight[v]
        if w < 1 or not kids:
            continue
        lo_v, hi_v = tree.leaf_lo[v], tree.leaf_hi[v]
        heavy = max(kids, key=lambda c: tree.leaf_hi[c] - tree.leaf_lo[c])
        for c in kids:
            if c is heavy:
                continue
            lo_c, hi_c = tree.leaf_lo[c], tree.leaf_hi[c]
            for pos in range(lo_c, hi_c + 1):
                i = order[pos]
                for j in (i - w, i + w):
                    if 1 <= j <= n + 1:
                        pj = leaf_pos[j]
                        if lo_v <= pj <= hi_v and not (lo_c <= pj <= hi_c):
                            out.add((min(i, j), w))
    return sorted(out)


def _rne_numpy(tree: TreeView, n: int) -> list[tuple[int, int]]:
    order = np.asarray(tree.order, dtype=np.int64)
    leaf_pos = np.asarray(tree.leaf_pos, dtype=np.int64)
    found_i: list[np.ndarray] = []
    found_p: list[np.ndarray] = []
    for v in range(len(tree.weight)):
        kids = tree.children[v]
        w = tree.weight[v]
        if w < 1 or not kids:
            continue
        lo_v, hi_v = tree.leaf_lo[v], tree.leaf_hi[v]
        heavy = max(kids, key=lambda c: tree.leaf_hi[c] - tree.leaf_lo[c])
        for c in kids:
            if c is heavy:
                continue
            seg = order[tree.leaf_lo[c] : tree.leaf_hi[c] + 1]
            for sign in (-1, 1):
                j = seg + sign * w
                ok = (j >= 1) & (j <= n + 1)
                if not ok.any():
                    continue
                jj = j[ok]
                pj = leaf_pos[jj]
                inside = (pj >= lo_v) & (pj <= hi_v)
                inside &= ~((pj >= tree.leaf_lo[c]) & (pj <= tree.leaf_hi[c]))
                if not inside.any():
                    continue
                ii = np.minimum(seg[ok][inside], jj[inside])
                found_i.append(ii)
                found_p.append(np.full(len(ii), w, dtype=np.int64))
    if not found_i:
        return []
    allp = np.stack([np.concatenate(found_i), np.concatenate(found_p)], axis=1)
    allp = np.unique(allp, axis=0)
    return [(int(a), int(b)) for a, b in allp]


def right_nonshiftable(index: ScerIndex, rne: list[tuple[int, int]] | None = None) -> list[tuple[int, int]]:
    """Right non-extendible squares that stay squares nowhere one step right.

    A right non-extendible square T[i..i+2p) is right shiftable exactly
    when the suffixes i+1 and i+p+1 share an equivalent prefix of length p
    (it is always at least p-1).
    """
    if rne is None:
        rne = right_nonextendible(index)
    if not rne:
        return []
    if len(rne) >= 512 and index.n > 256:
        arr = np.asarray(rne, dtype=np.int64)
        lcps = index.lcp_batch(arr[:, 0] + 1, arr[:, 0] + arr[:, 1] + 1)
        keep = lcps == arr[:, 1] - 1
        return [(int(i), int(p)) for i, p in arr[keep]]
    return [
        (i, p) for i, p in rne if index.lcp_suffixes(i + 1, i + p + 1) == p - 1
    ]


@dataclass
class SquaresTable:
    """Interval representation of square start positions per half-period.

    intervals[p] is a sorted list of disjoint, non-adjacent closed
    intervals [l..r]: T[i..i+2p) is a square iff some interval of
    intervals[p] contains i.
    """

    n: int
    relation: str
    intervals: dict[int, list[tuple[int, int]]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.intervals.values())

    def contains(self, i: int, p: int) -> bool:
        ivs = self.intervals.get(p)
        if not ivs:
            return False
        pos = bisect_right(ivs, (i, self.n + 1)) - 1
        return pos >= 0 and ivs[pos][0] <= i <= ivs[pos][1]

    def positions(self, p: int) -> list[int]:
        return [i for lo, hi in self.intervals.get(p, []) for i in range(lo, hi + 1)]


def reversed_index(index: ScerIndex) -> ScerIndex:
    """Index of the reversed text under the relation that mirrors matches."""
    return ScerIndex(index.text.reversed(), REVERSED_RELATION[index.relation])


def nonshiftable_sets(
    index: ScerIndex, rev_index: ScerIndex | None = None
) -> dict[int, tuple[list[int], list[int]]]:
    """Per half-period p: (left non-shiftable starts, right non-shiftable starts).

    The left side runs the right-side machinery on the reversed text; a
    square at i with half-period p maps to start n-i-2p+2 there.
    """
    n = index.n
    if rev_index is None:
        rev_index = reversed_index(index)
    by_p: dict[int, tuple[list[int], list[int]]] = defaultdict(lambda: ([], []))
    for i, p in right_nonshiftable(index):
        by_p[p][1].append(i)
    for istar, p in right_nonshiftable(rev_index):
        by_p[p][0].append(n - istar - 2 * p + 2)
    return dict(by_p)


def squares_table(
    index: ScerIndex, rev_index: ScerIndex | None = None
) -> SquaresTable:
    """Pair sorted left/right non-shiftable starts into maximal intervals."""
    sets = nonshiftable_sets(index, rev_index)
    table = SquaresTable(index.n, index.relation)
    for p, (lefts, rights) in sorted(sets.items()):
        lefts.sort()
        rights.sort()
        if len(lefts) != len(rights):
            raise AssertionError(
                f"unbalanced interval endpoints for p={p}: "
                f"{len(lefts)} left vs {len(rights)} right"
            )
        ivs = []
        for lo, hi in zip(lefts, rights):
            if lo > hi:
                raise AssertionError(f"crossed interval [{lo}..{hi}] for p={p}")
            ivs.append((lo, hi))
        table.intervals[p] = ivs
    return table


class CursorCounter:
    """Dynamic set over [1..n] with a cursor; reports |Y ∩ (cursor..n]|.

    Backed by an indicator bit array and a running count, so every
    operation is O(1).
    """

    def __init__(self, n: int):
        self.n = n
        self._bits = bytearray(n + 2)
        self.cursor = 0
        self.count = 0

    def insert(self, x: int) -> int:
        if not (1 <= x <= self.n):
            raise ValueError(f"element {x} out of [1..{self.n}]")
        if self._bits[x]:
            raise ValueError(f"element {x} already present")
        self._bits[x] = 1
        if x > self.cursor:
            self.count += 1
        return self.count

    def delete(self, x: int) -> int:
        if not (1 <= x <= self.n) or not self._bits[x]:
            raise ValueError(f"element {x} not present")
        self._bits[x] = 0
        if x > self.cursor:
            self.count -= 1
        return self.count

    def inc(self) -> int:
        if self.cursor >= self.n:
            raise ValueError("cursor already at n")
        self.cursor += 1
        self.count -= self._bits[self.cursor]
        return self.count

    def dec(self) -> int:
        if self.cursor <= 0:
            raise ValueError("cursor already at 0")
        self.count += self._bits[self.cursor]
        self.cursor -= 1
        return self.count


def sweep_count(table: SquaresTable, lpf: np.ndarray, n: int) -> int:
    """Sum over positions of active square lengths exceeding lpf[k].

    Walks k = 1..n keeping the set of active doubled half-periods; at each
    k the cursor moves to lpf[k] and the structure reports how many active
    squares of length 2p satisfy lpf[k] < 2p, i.e. have their leftmost
    occurrence at k.
    """
    starts: dict[int, list[int]] = defaultdict(list)
    ends: dict[int, list[int]] = defaultdict(list)
    for p, ivs in table.intervals.items():
        for lo, hi in ivs:
            starts[lo].append(2 * p)
            ends[hi].append(2 * p)
    counter = CursorCounter(n)
    total = 0
    for k in range(1, n + 1):
        for x in starts.get(k, ()):
            counter.insert(x)
        target = int(lpf[k])
        while counter.cursor < target:
            counter.inc()
        while counter.cursor > target:
            counter.dec()
        total += counter.count
        for x in ends.get(k, ()):
            counter.delete(x)
    return total


def count_nonequivalent(
    t: Text,
    relation: str,
    *,
    index: ScerIndex | None = None,
    table: SquaresTable | None = None,
) -> int:
    """Number of square substrings, counted up to the relation's equivalence."""
    if t.n < 2:
        return 0
    if index is None:
        index = ScerIndex(t, relation)
    if table is None:
        table = squares_table(index)
    return sweep_count(table, index.lpf(), t.n)


def count_distinct(
    t: Text,
    relation: str,
    *,
    index: ScerIndex | None = None,
    table: SquaresTable | None = None,
    exact_index: ScerIndex | None = None,
) -> int:
    """Number of square substrings under the relation, distinct as strings."""
    if t.n < 2:
        return 0
    if index is None:
        index = ScerIndex(t, relation)
    if table is None:
        table = squares_table(index)
    if exact_index is None:
        exact_index = index if relation == "exact" else ScerIndex(t, "exact")
    return sweep_count(table, exact_index.lpf(), t.n)
