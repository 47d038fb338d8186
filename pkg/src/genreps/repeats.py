"""Enumeration of k-mismatch repeats: uniform k-runs, k-runs, generalised
runs, and maximal gapped repeats (MGRs), all per fixed period via sliding
windows over the mismatch indicator T[i] != T[i+period].

Records store fragments as half-open [a..b); reported positions are
1-based.  A text position i is an l-mismatching position when
T[i] != T[i+l]; a window of starts shares one uniform run exactly while no
mismatching position enters or leaves it.

Functions accept a Text or any integer sequence (a 1-based array padded
with -1 at index 0 is used as-is).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .text import Text

_NUMPY_MIN_N = 96


@dataclass(frozen=True)
class UniformKRun:
    a: int
    b: int  # exclusive
    ell: int
    mismatches: tuple[int, ...]
    k: int

    @property
    def start_interval(self) -> tuple[int, int]:
        """Window starts [a .. b-2l] whose squares share the mismatch set."""
        return (self.a, self.b - 2 * self.ell)


@dataclass(frozen=True)
class KRun:
    a: int
    b: int  # exclusive
    ell: int
    k: int

    @property
    def start_interval(self) -> tuple[int, int]:
        return (self.a, self.b - 2 * self.ell)


@dataclass(frozen=True)
class GeneralisedRun:
    x: int
    y: int  # exclusive
    p: int

    @property
    def period(self) -> int:
        return self.p


@dataclass(frozen=True)
class Mgr:
    x: int
    y: int  # exclusive
    ell: int
    arm_len: int

    @property
    def period(self) -> int:
        return self.ell

    @property
    def gap_ratio(self) -> Fraction:
        return Fraction(self.ell, self.arm_len)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.arm_len, self.ell)


class _View:
    """Normalized 1-based view of the input symbols."""

    __slots__ = ("lst", "arr", "n")

    def __init__(self, t):
        if isinstance(t, Text):
            self.n = t.n
            self.lst = t.padded
            self.arr = t.padded_np if t.n >= _NUMPY_MIN_N else None
            return
        if isinstance(t, np.ndarray):
            padded = t if (len(t) and t[0] == -1) else np.concatenate(([-1], t))
            self.n = len(padded) - 1
            if self.n >= _NUMPY_MIN_N:
                self.arr = padded
                self.lst = None
            else:
                self.arr = None
                self.lst = padded.tolist()
            return
        lst = list(t)
        if not (lst and lst[0] == -1):
            lst = [-1, *lst]
        self.n = len(lst) - 1
        self.lst = lst
        self.arr = np.asarray(lst, dtype=np.int64) if self.n >= _NUMPY_MIN_N else None


def _period_range(n: int, periods) -> Iterable[int]:
    if periods is None:
        return range(1, n // 2 + 1)
    if isinstance(periods, int):
        return (periods,) if 1 <= periods <= n // 2 else ()
    return [p for p in periods if 1 <= p <= n // 2]


def mismatch_positions(t, ell: int) -> list[int]:
    """Ascending positions i in [1..n-l] with T[i] != T[i+l]."""
    v = _View(t)
    if not (1 <= ell <= v.n):
        raise ValueError(f"period {ell} out of range for n={v.n}")
    if v.arr is not None:
        d = v.arr[1 : v.n - ell + 1] != v.arr[ell + 1 : v.n + 1]
        return (np.flatnonzero(d) + 1).tolist()
    s = v.lst
    return [i for i in range(1, v.n - ell + 1) if s[i] != s[i + ell]]


def is_k_mismatch_square(t, i: int, ell: int, k: int) -> bool:
    """Is T[i..i+2l) a square of its halves with at most k mismatches?"""
    v = _View(t)
    if i < 1 or i + 2 * ell - 1 > v.n:
        raise ValueError(f"square [{i}..{i + 2 * ell - 1}] out of range for n={v.n}")
    s = v.lst if v.lst is not None else v.arr
    count = 0
    for q in range(i, i + ell):
        if s[q] != s[q + ell]:
            count += 1
            if count > k:
                return False
    return True


def _uniform_segments(v: _View, ell: int):
    """Maximal equal-mismatch-set segments of window starts for one period.

    Yields (first start, last start, mismatch count, diff) where diff
    indexes the l-mismatching positions (1-based list or 0-based array).
    """
    n = v.n
    w = n - 2 * ell + 1
    if w < 1:
        return
    if v.arr is not None:
        arr = v.arr
        d = arr[1 : n - ell + 1] != arr[ell + 1 : n + 1]  # d[q-1]: mismatch at q
        csum = np.concatenate(([0], np.cumsum(d)))
        brk = d[: w - 1] | d[ell : ell + w - 1]  # break between starts i and i+1
        bounds = np.flatnonzero(brk) + 1
        starts = np.concatenate(([1], bounds + 1))
        ends = np.concatenate((bounds, [w]))
        counts = csum[starts + ell - 1] - csum[starts - 1]
        for s0, e0, c0 in zip(starts.tolist(), ends.tolist(), counts.tolist()):
            yield s0, e0, c0, d
        return
    s = v.lst
    diff = [False] * (n - ell + 2)
    for q in range(1, n - ell + 1):
        diff[q] = s[q] != s[q + ell]
    cnt = sum(diff[1 : ell + 1])
    seg_start = 1
    seg_cnt = cnt
    for i in range(2, w + 1):
        broke = diff[i - 1] or diff[i - 1 + ell]
        cnt += diff[i + ell - 1] - diff[i - 1]
        if broke:
            yield seg_start, i - 1, seg_cnt, diff
            seg_start = i
            seg_cnt = cnt
    yield seg_start, w, seg_cnt, diff


def _mism_of_segment(diff, lo: int, ell: int) -> tuple[int, ...]:
    if isinstance(diff, np.ndarray):
        return tuple((np.flatnonzero(diff[lo - 1 : lo - 1 + ell]) + lo).tolist())
    return tuple(q for q in range(lo, lo + ell) if diff[q])


def uniform_k_runs(t, k: int, periods=None) -> list[UniformKRun]:
    """All maximal uniform k-runs: stretches of equal-length squares whose
    mismatch sets coincide and have size at most k."""
    v = _View(t)
    out: list[UniformKRun] = []
    for ell in _period_range(v.n, periods):
        for lo, hi, cnt, diff in _uniform_segments(v, ell):
            if cnt <= k:
                out.append(
                    UniformKRun(lo, hi + 2 * ell, ell, _mism_of_segment(diff, lo, ell), k)
                )
    return out


def count_uniform_k_runs(t, k: int, periods=None) -> int:
    """Number of maximal uniform k-runs (no records materialized).

    Counts stretches of starts with window count <= k plus the
    set-changing breaks inside them: every break splits one more uniform
    run off, and equal-set segments never straddle a count boundary.
    """
    v = _View(t)
    total = 0
    if v.arr is None:
        for ell in _period_range(v.n, periods):
            for _, _, cnt, _ in _uniform_segments(v, ell):
                if cnt <= k:
                    total += 1
        return total
    arr = v.arr
    n = v.n
    for ell in _period_range(n, periods):
        w = n - 2 * ell + 1
        if w < 1:
            continue
        d = arr[1 : n - ell + 1] != arr[ell + 1 : n + 1]
        csum = np.cumsum(d, dtype=np.int32)
        wins = csum[ell - 1 : ell - 1 + w].copy()
        wins[1:] -= csum[: w - 1]
        ok = wins <= k
        total += int(ok[0]) + int(np.count_nonzero(ok[1:] & ~ok[:-1]))
        if w > 1:
            brk = d[: w - 1] | d[ell : ell + w - 1]
            total += int(np.count_nonzero(brk & ok[:-1] & ok[1:]))
    return total


def uniform_start_intervals(t, ell: int, k: int) -> list[tuple[int, int]]:
    """Window-start intervals [a..b-2l] of the uniform k-runs of one period."""
    v = _View(t)
    out = []
    if 1 <= ell <= v.n // 2:
        for lo, hi, cnt, _ in _uniform_segments(v, ell):
            if cnt <= k:
                out.append((lo, hi))
    return out


def _bool_runs(flags: np.ndarray):
    """Maximal runs of True in a boolean vector, as 1-based [s..e]."""
    if len(flags) == 0:
        return
    edges = np.flatnonzero(np.diff(flags.astype(np.int8)))
    starts = [1] if flags[0] else []
    ends: list[int] = []
    for e in edges.tolist():
        if flags[e]:
            ends.append(e + 1)
        else:
            starts.append(e + 2)
    if flags[-1]:
        ends.append(len(flags))
    yield from zip(starts, ends)


def _krun_segments(v: _View, ell: int, k: int):
    """Maximal stretches of starts whose window mismatch count stays <= k."""
    n = v.n
    w = n - 2 * ell + 1
    if w < 1:
        return
    if v.arr is not None:
        arr = v.arr
        d = arr[1 : n - ell + 1] != arr[ell + 1 : n + 1]
        csum = np.concatenate(([0], np.cumsum(d)))
        ok = (csum[ell : ell + w] - csum[:w]) <= k
        yield from _bool_runs(ok)
        return
    s = v.lst
    diff = [False] * (n - ell + 2)
    for q in range(1, n - ell + 1):
        diff[q] = s[q] != s[q + ell]
    cnt = sum(diff[1 : ell + 1])
    run_start = 1 if cnt <= k else 0
    for i in range(2, w + 1):
        cnt += diff[i + ell - 1] - diff[i - 1]
        if cnt <= k and not run_start:
            run_start = i
        elif cnt > k and run_start:
            yield run_start, i - 1
            run_start = 0
    if run_start:
        yield run_start, w


def k_runs(t, k: int, periods=None) -> list[KRun]:
    """All maximal k-runs: every window of the stretch is a k-mismatch square."""
    v = _View(t)
    out: list[KRun] = []
    for ell in _period_range(v.n, periods):
        for lo, hi in _krun_segments(v, ell, k):
            out.append(KRun(lo, hi + 2 * ell, ell, k))
    return out


def _equality_blocks(v: _View, p: int):
    """Maximal blocks [s..e] of positions with T[q] = T[q+p]."""
    n = v.n
    if v.arr is not None:
        arr = v.arr
        eq = arr[1 : n - p + 1] == arr[p + 1 : n + 1]
        yield from _bool_runs(eq)
        return
    s = v.lst
    start = 0
    for q in range(1, n - p + 1):
        if s[q] == s[q + p]:
            if not start:
                start = q
        elif start:
            yield start, q - 1
            start = 0
    if start:
        yield start, n - p


def generalised_runs(t, periods=None) -> list[GeneralisedRun]:
    """All maximal periodic fragments of length >= 2p per period p (0-runs)."""
    v = _View(t)
    out: list[GeneralisedRun] = []
    for p in _period_range(v.n, periods):
        for s0, e0 in _equality_blocks(v, p):
            if e0 - s0 + 1 >= p:
                out.append(GeneralisedRun(s0, e0 + p + 1, p))
    return out


def mgrs(t, alpha_max: Fraction | float | None = None, periods=None) -> list[Mgr]:
    """All maximal gapped repeats; arms strictly shorter than the period.

    Equality blocks of length u with 0 < u < period are exactly the MGRs of
    that period; blocks of length >= period are generalised runs instead.
    """
    v = _View(t)
    out: list[Mgr] = []
    for ell in _period_range(v.n, periods):
        for s0, e0 in _equality_blocks(v, ell):
            u = e0 - s0 + 1
            if 0 < u < ell:
                rec = Mgr(s0, e0 + ell + 1, ell, u)
                if alpha_max is None or rec.gap_ratio <= alpha_max:
                    out.append(rec)
    return out


def induces(rep: Mgr | GeneralisedRun, run: UniformKRun) -> bool:
    """Does the repeat's arm interval meet the run's square-start interval?

    Both intervals are taken one period short of the fragment end, exactly
    matching the defining intersection test.
    """
    ell = rep.period
    if ell != run.ell:
        raise ValueError(f"period mismatch: repeat {ell} vs run {run.ell}")
    return max(rep.x, run.a) < min(rep.y - ell, run.b - ell)
