"""Suffix index for a text under an equivalence-relation encoder.

The index orders the code strings of all suffixes (each suffix T[i..n]
contributes the sequence of codes of its prefixes, terminated by an
end-marker below every code), stores the adjacent-pair LCP array, and
answers longest-common-equivalent-prefix queries between any two suffixes
via range-minimum queries.  From it we derive longest-previous-factor
arrays and a weighted tree view of the compacted trie.

Construction is deterministic: code strings are materialized and sorted
for small texts; larger texts use prefix doubling (exact matching) or a
vectorized radix prefilter plus comparator refinement (distance-to-anchor
encoders).  Adjacent-pair LCPs come from the Kasai rank walk for exact
matching and from direct walks otherwise, since the rank-walk carry is
unsound for window-clipped encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from .encodings import Encoder, ExactEncoder, _ClipEncoder, make_encoder
from .text import Text

_SMALL_N = 256


class _MinTable:
    """Range-minimum queries: direct scans on small arrays, a sparse table
    with O(1) queries above that."""

    _SCAN_MAX = 64

    def __init__(self, arr):
        self._list = list(arr)
        m = len(self._list)
        self._m = m
        if m <= self._SCAN_MAX:
            self._levels = None
            return
        base = np.asarray(self._list, dtype=np.int64)
        levels = [base]
        k = 1
        while (1 << k) <= m:
            prev = levels[-1]
            half = 1 << (k - 1)
            levels.append(np.minimum(prev[:-half], prev[half:]))
            k += 1
        self._levels = levels

    def query(self, lo: int, hi: int) -> int:
        """min(arr[lo..hi]), inclusive; requires lo <= hi."""
        if self._levels is None:
            return min(self._list[lo : hi + 1])
        k = (hi - lo + 1).bit_length() - 1
        lvl = self._levels[k]
        return int(min(lvl[lo], lvl[hi - (1 << k) + 1]))

    def query_batch(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        if self._levels is None:
            return np.asarray(
                [self.query(int(a), int(b)) for a, b in zip(lo, hi)], dtype=np.int64
            )
        width = hi - lo + 1
        out = np.empty(len(lo), dtype=np.int64)
        ks = np.frexp(width.astype(np.float64))[1] - 1  # floor(log2(width))
        for k in np.unique(ks):
            sel = ks == k
            lvl = self._levels[int(k)]
            out[sel] = np.minimum(lvl[lo[sel]], lvl[hi[sel] - (1 << int(k)) + 1])
        return out


def _sort_rows(encoder: Encoder, n: int) -> tuple[list[int], list[list[int]]]:
    """Materialize all suffix code rows and sort starts lexicographically.

    Bare rows sort identically to end-marker-terminated rows: the marker is
    below every code, and a shorter row compares accordingly.
    """
    rows: list[list[int]] = [[] for _ in range(n + 2)]
    for i in range(1, n + 1):
        rows[i] = encoder.code_row(i)
    order = sorted(range(1, n + 2), key=rows.__getitem__)
    return order, rows


def _lcp_from_rows(order: list[int], rows: list[list[int]]) -> list[int]:
    m = len(order)
    lcp = [0] * m
    for r in range(1, m):
        a, b = rows[order[r - 1]], rows[order[r]]
        limit = min(len(a), len(b))
        h = 0
        while h < limit and a[h] == b[h]:
            h += 1
        lcp[r] = h
    return lcp


def _order_exact_large(text: Text) -> np.ndarray:
    """Suffix order by prefix doubling (numpy), sentinel suffix first."""
    n = text.n
    s = text.padded_np[1:]
    order = np.argsort(s, kind="stable")
    rank = np.zeros(n, dtype=np.int64)
    sv = s[order]
    rank[order] = np.cumsum(np.concatenate(([0], (sv[1:] != sv[:-1]).astype(np.int64))))
    k = 1
    while k < n and rank[order[-1]] != n - 1:
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - k] = rank[k:]
        order = np.lexsort((key2, rank))
        r1, r2 = rank[order], key2[order]
        changed = np.concatenate(([0], ((r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])).astype(np.int64)))
        newr = np.zeros(n, dtype=np.int64)
        newr[order] = np.cumsum(changed)
        rank = newr
        k <<= 1
    return np.concatenate(([n + 1], order + 1))


def _clip_cmp(anchor, n: int, t0: int):
    """Comparator over starts for the clipped-distance code family."""

    def cmp(a: int, b: int) -> int:
        la, lb = n - a + 1, n - b + 1
        m = la if la < lb else lb
        t = t0
        while t < m:
            j1 = a + t
            a1 = anchor[j1]
            x = j1 - a1 if a1 >= a else 0
            j2 = b + t
            a2 = anchor[j2]
            y = j2 - a2 if a2 >= b else 0
            if x != y:
                return -1 if x < y else 1
            t += 1
        return -1 if la < lb else 1

    return cmp


def _clip_key_block(anchor_np, members: np.ndarray, t0: int, depth: int, n: int) -> list[np.ndarray]:
    """Code columns t0..t0+depth-1 for the given starts; -1 marks the end."""
    cols = []
    for t in range(t0, t0 + depth):
        j = members + t
        valid = j <= n
        jj = np.where(valid, j, 1)
        a = anchor_np[jj]
        col = np.where(valid, np.where(a >= members, jj - a, 0), -1)
        cols.append(col)
    return cols


def _order_clip_large(anchor, n: int) -> np.ndarray:
    """MSD-style sort of the clip-family code strings.

    Blocks of code columns are extracted vectorized and lexsorted; tied
    groups recurse on the next block, finishing small groups with the
    plain comparator.  Deterministic; superlinear only on degenerate texts.
    """
    anchor_np = np.asarray(anchor, dtype=np.int64)
    anchor_list = anchor_np.tolist()
    depth = 24
    out = np.empty(n + 1, dtype=np.int64)
    work = [(np.arange(1, n + 2, dtype=np.int64), 0, 0)]
    while work:
        members, t0, off = work.pop()
        m = len(members)
        if m <= 64:
            ordered = sorted(members.tolist(), key=cmp_to_key(_clip_cmp(anchor_list, n, t0)))
            out[off : off + m] = ordered
            continue
        cols = _clip_key_block(anchor_np, members, t0, depth, n)
        perm = np.lexsort(tuple(reversed(cols)))
        members = members[perm]
        keys = np.stack(cols, axis=1)[perm]
        out[off : off + m] = members
        tied = (keys[1:] == keys[:-1]).all(axis=1)
        # rows ending inside the block (marker -1) cannot tie: lengths differ
        if tied.any():
            idx = np.flatnonzero(np.concatenate(([False], tied)))
            # group consecutive tied rows into segments [s..e]
            seg_start = None
            prev = -2
            for q in idx.tolist() + [-10]:
                if q != prev + 1:
                    if seg_start is not None:
                        work.append((members[seg_start - 1 : prev + 1].copy(), t0 + depth, off + seg_start - 1))
                    seg_start = q
                prev = q
    return out


def _lcp_adjacent_clip(anchor, order: list[int], n: int) -> list[int]:
    """Adjacent-pair LCPs for the clip family, each computed from scratch.

    The Kasai rank-walk carry is NOT valid here: clipping can reorder the
    shifted code strings, so the carried h-1 is no lower bound for the new
    predecessor pair (verified by tests against the materialized path).
    """
    m = len(order)
    lcp = [0] * m
    olist = list(order)
    for r in range(1, m):
        a, b = olist[r - 1], olist[r]
        limit = min(n - a + 1, n - b + 1)
        h = 0
        while h < limit:
            j1 = a + h
            a1 = anchor[j1]
            x = j1 - a1 if a1 >= a else 0
            j2 = b + h
            a2 = anchor[j2]
            y = j2 - a2 if a2 >= b else 0
            if x != y:
                break
            h += 1
        lcp[r] = h
    return lcp


def _kasai_exact(sym, order: list[int], rank: list[int], n: int) -> list[int]:
    lcp = [0] * (n + 1)
    h = 0
    for i in range(1, n + 2):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = order[r - 1]
        limit = min(n - i + 1, n - j + 1)
        while h < limit and sym[i + h] == sym[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def _lcp_adjacent_walk(encoder: Encoder, order: list[int], n: int) -> list[int]:
    """Unconditional adjacent-pair LCP computation (no rank-walk carry)."""
    m = len(order)
    lcp = [0] * m
    code = encoder.code
    for r in range(1, m):
        a, b = order[r - 1], order[r]
        limit = min(n - a + 1, n - b + 1)
        h = 0
        while h < limit and code(a, a + h) == code(b, b + h):
            h += 1
        lcp[r] = h
    return lcp


class ScerIndex:
    """Suffix ordering, LCP array and RMQ over a code-string collection."""

    def __init__(self, text: Text, relation: str = "exact", encoder: Encoder | None = None):
        self.text = text
        self.encoder = encoder if encoder is not None else make_encoder(text, relation)
        self.relation = self.encoder.relation
        n = text.n
        self.n = n
        if n <= _SMALL_N:
            order, rows = _sort_rows(self.encoder, n)
            self.order = order
            self.rank = self._order_ranks()
            self.lcp = _lcp_from_rows(order, rows)
        else:
            if isinstance(self.encoder, ExactEncoder):
                self.order = _order_exact_large(text).tolist()
            elif isinstance(self.encoder, _ClipEncoder):
                self.order = _order_clip_large(self.encoder.anchor, n).tolist()
            else:
                cmp = _generic_cmp(self.encoder, n)
                self.order = sorted(range(1, n + 2), key=cmp_to_key(cmp))
            self.rank = self._order_ranks()
            self.lcp = self._build_lcp_large()
        self._rmq: _MinTable | None = None
        self._lpf: np.ndarray | None = None
        self._tree: TreeView | None = None
        self._rank_np: np.ndarray | None = None

    def _build_lcp_large(self) -> list[int]:
        n = self.n
        if isinstance(self.encoder, ExactEncoder):
            return _kasai_exact(self.text.padded, self.order, self.rank, n)
        if isinstance(self.encoder, _ClipEncoder):
            return _lcp_adjacent_clip(self.encoder.anchor.tolist(), self.order, n)
        return _lcp_adjacent_walk(self.encoder, self.order, n)

    def _order_ranks(self) -> list[int]:
        rank = [0] * (self.n + 2)
        for r, start in enumerate(self.order):
            rank[start] = r
        return rank

    @property
    def rmq(self) -> _MinTable:
        if self._rmq is None:
            self._rmq = _MinTable(self.lcp)
        return self._rmq

    def lcp_suffixes(self, i: int, j: int) -> int:
        """Longest l with T[i..i+l) equivalent to T[j..j+l)."""
        n = self.n
        if not (1 <= i <= n + 1 and 1 <= j <= n + 1):
            raise ValueError(f"suffix positions ({i}, {j}) out of range for n={n}")
        if i == j:
            return n - i + 1
        r1, r2 = self.rank[i], self.rank[j]
        if r1 > r2:
            r1, r2 = r2, r1
        return self.rmq.query(r1 + 1, r2)

    def lcp_batch(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        if self._rank_np is None:
            self._rank_np = np.asarray(self.rank, dtype=np.int64)
        r1 = self._rank_np[i]
        r2 = self._rank_np[j]
        lo = np.minimum(r1, r2) + 1
        hi = np.maximum(r1, r2)
        out = np.empty(len(lo), dtype=np.int64)
        same = hi < lo  # i == j
        if same.any():
            out[same] = self.n - np.asarray(i)[same] + 1
        rest = ~same
        if rest.any():
            out[rest] = self.rmq.query_batch(lo[rest], hi[rest])
        return out

    def lpf(self) -> np.ndarray:
        """Longest previous factor under the relation; 1-based, index 0 unused.

        lpf[i] is the largest l such that T[i..i+l) is equivalent to
        T[j..j+l) for some j < i.  Computed from the suffix order via the
        nearest earlier-starting suffix on each side in rank space.
        """
        if self._lpf is not None:
            return self._lpf
        n = self.n
        order = self.order
        m = len(order)
        prev_c = [-1] * m
        next_c = [-1] * m
        stack: list[int] = []
        for r in range(m):
            v = order[r]
            while stack and order[stack[-1]] > v:
                stack.pop()
            prev_c[r] = stack[-1] if stack else -1
            stack.append(r)
        stack.clear()
        for r in range(m - 1, -1, -1):
            v = order[r]
            while stack and order[stack[-1]] > v:
                stack.pop()
            next_c[r] = stack[-1] if stack else -1
            stack.append(r)
        rmq = self.rmq
        lpf = np.zeros(n + 1, dtype=np.int64)
        for r in range(m):
            i = order[r]
            if i > n:
                continue
            best = 0
            p = prev_c[r]
            if p != -1:
                best = rmq.query(p + 1, r)
            q = next_c[r]
            if q != -1:
                v = rmq.query(r + 1, q)
                if v > best:
                    best = v
            lpf[i] = best
        self._lpf = lpf
        return lpf

    def tree(self) -> "TreeView":
        if self._tree is None:
            self._tree = TreeView(self)
        return self._tree

    def dump_tsv(self) -> str:
        lines = [
            f"{r}\t{self.order[r]}\t{self.lcp[r]}" for r in range(len(self.order))
        ]
        return "\n".join(lines) + "\n"


def _generic_cmp(encoder: Encoder, n: int):
    code = encoder.code

    def cmp(a: int, b: int) -> int:
        la, lb = n - a + 1, n - b + 1
        m = la if la < lb else lb
        for t in range(m):
            x = code(a, a + t)
            y = code(b, b + t)
            if x != y:
                return -1 if x < y else 1
        return -1 if la < lb else 1

    return cmp


class TreeView:
    """Compacted trie of the code strings, materialized from order + LCP.

    Internal nodes carry their string depth as weight; leaves carry the
    full code-string length (including the end-marker) and are labeled by
    suffix start positions, left to right in index order.  Each node knows
    the contiguous range of leaf positions below it, which doubles as the
    pre/post-order interval for subtree membership tests.
    """

    def __init__(self, index: ScerIndex):
        n = index.n
        order = index.order
        lcp = index.lcp
        m = len(order)
        weight: list[int] = []
        parent: list[int] = []
        children: list[list[int]] = []
        leaf_start: list[int] = []  # 0 for internal nodes

        def new_node(w: int, par: int, start: int = 0) -> int:
            weight.append(w)
            parent.append(par)
            children.append([])
            leaf_start.append(start)
            if par >= 0:
                children[par].append(len(weight) - 1)
            return len(weight) - 1

        root = new_node(0, -1)
        leaf = new_node(n - order[0] + 2, root, order[0])
        stack = [root, leaf]
        for r in range(1, m):
            v = lcp[r]
            last = -1
            while weight[stack[-1]] > v:
                last = stack.pop()
            top = stack[-1]
            if weight[top] < v:
                children[top].pop()  # detach `last`, the most recent child
                mid = new_node(v, top)
                children[mid].append(last)
                parent[last] = mid
                stack.append(mid)
                top = mid
            leaf = new_node(n - order[r] + 2, top, order[r])
            stack.append(leaf)
        self.root = root
        self.weight = weight
        self.parent = parent
        self.children = children
        self.leaf_start = leaf_start
        self.order = order
        # leaf ranges: leaves appear in `order` sequence; assign leaf
        # positions in a pre-order walk, then fold upward (reversed
        # pre-order visits children before parents)
        lo = [m] * len(weight)
        hi = [-1] * len(weight)
        pos = 0
        visit: list[int] = []
        node_stack = [root]
        while node_stack:
            v = node_stack.pop()
            visit.append(v)
            if not children[v]:
                lo[v] = hi[v] = pos
                pos += 1
            else:
                node_stack.extend(reversed(children[v]))
        for v in reversed(visit):
            p = parent[v]
            if p >= 0:
                if lo[v] < lo[p]:
                    lo[p] = lo[v]
                if hi[v] > hi[p]:
                    hi[p] = hi[v]
        self.leaf_lo = lo
        self.leaf_hi = hi
        leaf_pos = [-1] * (n + 3)
        for p, start in enumerate(order):
            leaf_pos[start] = p
        self.leaf_pos = leaf_pos

    def lca_weight(self, i: int, j: int) -> int:
        """Weight of the lowest common ancestor of the leaves for starts i, j."""
        if i == j:
            raise ValueError("lca of a leaf with itself is the leaf")
        pi, pj = self.leaf_pos[i], self.leaf_pos[j]
        lo, hi = min(pi, pj), max(pi, pj)
        # climb from the leaf at pi until the range covers both
        v = self._leaf_node(pi)
        while not (self.leaf_lo[v] <= lo and hi <= self.leaf_hi[v]):
            v = self.parent[v]
        return self.weight[v]

    def _leaf_node(self, pos: int) -> int:
        # linear scan is fine: used by tests only
        for v in range(len(self.weight)):
            if not self.children[v] and self.leaf_lo[v] == pos:
                return v
        raise ValueError(f"no leaf at position {pos}")


@dataclass(frozen=True)
class LpfArrays:
    approx: np.ndarray
    exact: np.ndarray


def build_index(t: Text, relation: str = "exact") -> ScerIndex:
    return ScerIndex(t, relation)


def lpf_arrays(index: ScerIndex, exact_index: ScerIndex | None = None) -> LpfArrays:
    """Longest-previous-factor arrays: under the index relation and under equality."""
    if index.relation == "exact":
        exact_index = index
    elif exact_index is None:
        exact_index = ScerIndex(index.text, "exact")
    return LpfArrays(index.lpf(), exact_index.lpf())
