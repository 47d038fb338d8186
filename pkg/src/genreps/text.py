"""Text model over a dense integer alphabet, plus positional scaffolding.

Positions are 1-based throughout the package.  Positional arrays are
allocated with length n+1 and index 0 unused, so that array formulas read
exactly like their 1-based definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class Text:
    """Immutable text whose symbols are densely remapped to ``[0..sigma)``.

    The remap is monotone in the original symbol values, so both equality
    and relative order of symbols are preserved.
    """

    symbols: tuple[int, ...]
    sigma: int
    alphabet: tuple[int, ...]  # dense code -> original symbol

    def __post_init__(self):
        object.__setattr__(self, "n", len(self.symbols))

    def __len__(self) -> int:
        return self.n

    @cached_property
    def padded(self) -> list[int]:
        """Symbols as a 1-based python list; index 0 holds a -1 pad."""
        return [-1, *self.symbols]

    @cached_property
    def padded_np(self) -> np.ndarray:
        return np.array(self.padded, dtype=np.int64)

    @cached_property
    def prev(self) -> np.ndarray:
        """prev[i]: last position of symbol T[i] in T[1..i), 0 if none."""
        n = self.n
        prev = np.zeros(n + 1, dtype=np.int64)
        last = [0] * self.sigma
        s = self.padded
        for i in range(1, n + 1):
            c = s[i]
            prev[i] = last[c]
            last[c] = i
        return prev

    @cached_property
    def counts(self) -> "PrefixCounts":
        n = self.n
        table = np.zeros((self.sigma, n + 1), dtype=np.int32)
        if n:
            sym = self.padded_np[1:]
            for c in range(self.sigma):
                np.cumsum(sym == c, out=table[c, 1:])
        return PrefixCounts(table)

    def reversed(self) -> "Text":
        return Text(tuple(reversed(self.symbols)), self.sigma, self.alphabet)


@dataclass(frozen=True)
class PrefixCounts:
    """Per-symbol prefix occurrence counts: count(c, i) = |{j <= i : T[j] = c}|."""

    table: np.ndarray  # shape (sigma, n+1)

    def count(self, c: int, i: int) -> int:
        return int(self.table[c, i])


def text_from_symbols(values: Iterable[int]) -> Text:
    """Build a Text from arbitrary non-negative integers via a dense remap."""
    vals = list(values)
    for v in vals:
        if v < 0:
            raise ValueError(f"negative symbol {v}")
    if not vals:
        return Text((), 0, ())
    arr = np.asarray(vals, dtype=np.int64)
    alphabet, dense = np.unique(arr, return_inverse=True)
    return Text(tuple(int(x) for x in dense), len(alphabet), tuple(int(x) for x in alphabet))


def parse_text(raw: bytes, mode: str = "bytes") -> Text:
    """Parse raw input into a Text.

    mode "bytes": every byte is one symbol.  mode "ints": ASCII
    whitespace-separated non-negative integers.
    """
    if mode == "bytes":
        return text_from_symbols(raw)
    if mode == "ints":
        try:
            vals = [int(tok) for tok in raw.split()]
        except ValueError as exc:
            raise ValueError(f"malformed integer token: {exc}") from None
        return text_from_symbols(vals)
    raise ValueError(f"unknown input mode {mode!r}")


def prev_array(t: Text) -> np.ndarray:
    """Last-occurrence positions; see Text.prev.  Index 0 is padding."""
    return t.prev


def prefix_counts(t: Text) -> PrefixCounts:
    return t.counts


def substring(t: Text, i: int, j: int) -> tuple[int, ...]:
    """Dense symbols of T[i..j], inclusive 1-based endpoints."""
    if not (1 <= i and j <= t.n and i <= j + 1):
        raise ValueError(f"bad range [{i}..{j}] for n={t.n}")
    return t.symbols[i - 1 : j]
