"""Generalized repetitions in strings over integer alphabets.

Enumerates and counts k-mismatch squares organized as (uniform) k-runs,
maximal gapped repeats, generalised runs, parameterized squares, and
squares under arbitrary substring-consistent equivalence relations, with
brute-force oracles validating every efficient path.
"""

from .counting import (
    CursorCounter,
    SquaresTable,
    count_distinct,
    count_nonequivalent,
    right_nonextendible,
    right_nonshiftable,
    squares_table,
)
from .encodings import (
    RELATIONS,
    Encoder,
    Profiles,
    make_encoder,
    maximal_palindromes,
    profiles,
    scer_match,
)
from .index import LpfArrays, ScerIndex, TreeView, build_index, lpf_arrays
from .psquares import (
    PSquareReport,
    candidate_intervals,
    partition_run,
    report_distinct,
    report_nonequivalent,
    verify_intervals,
)
from .repeats import (
    GeneralisedRun,
    KRun,
    Mgr,
    UniformKRun,
    generalised_runs,
    induces,
    is_k_mismatch_square,
    k_runs,
    mgrs,
    mismatch_positions,
    uniform_k_runs,
)
from .text import Text, parse_text, prefix_counts, prev_array, text_from_symbols

__version__ = "0.1.0"

__all__ = [
    "CursorCounter",
    "Encoder",
    "GeneralisedRun",
    "KRun",
    "LpfArrays",
    "Mgr",
    "PSquareReport",
    "Profiles",
    "RELATIONS",
    "ScerIndex",
    "SquaresTable",
    "Text",
    "TreeView",
    "UniformKRun",
    "build_index",
    "candidate_intervals",
    "count_distinct",
    "count_nonequivalent",
    "generalised_runs",
    "induces",
    "is_k_mismatch_square",
    "k_runs",
    "lpf_arrays",
    "make_encoder",
    "maximal_palindromes",
    "mgrs",
    "mismatch_positions",
    "parse_text",
    "partition_run",
    "prefix_counts",
    "prev_array",
    "profiles",
    "report_distinct",
    "report_nonequivalent",
    "right_nonextendible",
    "right_nonshiftable",
    "scer_match",
    "squares_table",
    "text_from_symbols",
    "uniform_k_runs",
    "verify_intervals",
]
