import itertools
import random

import pytest

from conftest import random_text
from genreps import oracle
from genreps.index import ScerIndex
from genreps.psquares import (
    candidate_intervals,
    partition_run,
    report_distinct,
    report_nonequivalent,
    verify_intervals,
)
from genreps.repeats import KRun, k_runs, uniform_k_runs
from genreps.text import parse_text, text_from_symbols


def _cand_positions(cands, ell):
    out = set()
    for lo, hi in cands.get(ell, []):
        out.update(range(lo, hi + 1))
    return out


def test_candidates_cover_whole_square():
    t = parse_text(b"abcabc")
    cands = candidate_intervals(t)
    assert 1 in _cand_positions(cands, 3)


def test_candidates_cover_param_square(sq_text):
    cands = candidate_intervals(sq_text)
    assert 3 in _cand_positions(cands, 4)


def test_candidate_completeness_exhaustive():
    """No p-square start escapes the candidate intervals, for every text
    over three symbols up to length 8."""
    for n in range(2, 9):
        for word in itertools.product(range(3), repeat=n):
            t = text_from_symbols(word)
            cands = candidate_intervals(t)
            members = oracle.brute_squares_members(t, "param")
            for p, starts in members.items():
                got = _cand_positions(cands, p)
                assert set(starts) <= got, (word, p)


def test_candidate_completeness_random():
    rng = random.Random(2)
    for _ in range(20):
        t = random_text(rng, rng.randint(2, 150), rng.choice([2, 3, 4]))
        cands = candidate_intervals(t)
        members = oracle.brute_squares_members(t, "param")
        for p, starts in members.items():
            assert set(starts) <= _cand_positions(cands, p)


def test_interval_homogeneity():
    """Within every candidate interval, either all starts are p-squares or
    none is."""
    rng = random.Random(3)
    for _ in range(20):
        t = random_text(rng, rng.randint(2, 100), rng.choice([2, 3]))
        cands = candidate_intervals(t)
        s = t.padded
        for ell, pieces in cands.items():
            for lo, hi in pieces:
                flags = {
                    oracle.param_match(
                        s[i : i + ell], s[i + ell : i + 2 * ell]
                    )
                    for i in range(lo, hi + 1)
                }
                assert len(flags) == 1, (t.symbols, ell, lo, hi)


def test_verified_equal_brute_membership():
    rng = random.Random(4)
    for _ in range(20):
        t = random_text(rng, rng.randint(2, 100), rng.choice([2, 3, 4]))
        verified = verify_intervals(t)
        members = oracle.brute_squares_members(t, "param")
        got = {ell: sorted(_cand_positions(verified, ell)) for ell in verified}
        got = {ell: v for ell, v in got.items() if v}
        assert got == members


def test_dropped_interval_has_no_squares():
    rng = random.Random(5)
    checked = 0
    for _ in range(30):
        t = random_text(rng, rng.randint(4, 80), rng.choice([2, 3]))
        cands = candidate_intervals(t)
        verified = verify_intervals(t, cands)
        members = oracle.brute_squares_members(t, "param")
        for ell, pieces in cands.items():
            kept = set(verified.get(ell, []))
            for piece in pieces:
                if piece not in kept:
                    checked += 1
                    inside = set(range(piece[0], piece[1] + 1))
                    assert not (inside & set(members.get(ell, [])))
    assert checked > 0


def test_empty_text_reports():
    for t in (parse_text(b""), parse_text(b"a")):
        assert report_nonequivalent(t).occurrences == []
        assert report_distinct(t).occurrences == []


def test_report_examples():
    assert report_nonequivalent(parse_text(b"aa")).occurrences == [(1, 2)]
    assert report_nonequivalent(parse_text(b"ab")).occurrences == [(1, 2)]
    occs = report_distinct(parse_text(b"abab")).occurrences
    assert occs == [(1, 2), (2, 2), (1, 4)]  # "ab", "ba", "abab"


def test_report_random_vs_oracle():
    rng = random.Random(6)
    for _ in range(25):
        t = random_text(rng, rng.randint(0, 150), rng.choice([2, 3, 4]))
        got = report_nonequivalent(t).occurrences
        assert got == oracle.brute_nonequivalent_leftmost(t, "param")
        gotd = report_distinct(t).occurrences
        assert gotd == oracle.brute_distinct_leftmost(t, "param")


def test_reported_squares_verify_and_class_bound():
    rng = random.Random(7)
    for _ in range(15):
        t = random_text(rng, rng.randint(0, 90), rng.choice([2, 3, 4, 5]))
        rep = report_nonequivalent(t)
        s = t.padded
        assert rep.count < max(1, t.n * t.sigma)
        for i, length in rep.occurrences:
            ell = length // 2
            assert oracle.param_match(s[i : i + ell], s[i + ell : i + 2 * ell])
        # pairwise non-equivalent: canonical codes differ per length
        rows = oracle.canonical_rows(t, "param")
        seen = set()
        for i, length in rep.occurrences:
            key = (length, tuple(rows[i][:length]))
            assert key not in seen
            seen.add(key)


def test_partition_trivial_single_run():
    t = parse_text(b"abaaba")
    run = k_runs(t, 0, 3)[0]
    parts = partition_run(t, run)
    assert [(p.a, p.b, p.mismatches) for p in parts] == [(run.a, run.b, ())]


def test_partition_splits_krun(runs_text):
    """The 2-run T[5..24] of period 8 splits into T[5..22] and T[8..24]."""
    run = KRun(5, 25, 8, 2)
    parts = partition_run(runs_text, run)
    assert [(p.a, p.b) for p in parts] == [(5, 23), (8, 25)]
    want = [r for r in uniform_k_runs(runs_text, 2, 8) if r.a >= 5]
    assert [(p.a, p.b, p.mismatches) for p in parts] == [
        (r.a, r.b, r.mismatches) for r in want
    ]


def test_partition_random_vs_windowing():
    rng = random.Random(8)
    for _ in range(20):
        t = random_text(rng, rng.randint(2, 90), rng.choice([2, 3]))
        k = rng.choice([0, 1, 2, 3])
        uniform = uniform_k_runs(t, k)
        for run in k_runs(t, k):
            parts = partition_run(t, run)
            want = [
                r
                for r in uniform
                if r.ell == run.ell and run.a <= r.a and r.b <= run.b
            ]
            assert [(p.a, p.b, p.ell, p.mismatches) for p in parts] == [
                (r.a, r.b, r.ell, r.mismatches) for r in want
            ]


def test_report_order_deterministic():
    t = parse_text(b"abaababaab")
    occ = report_nonequivalent(t).occurrences
    assert occ == sorted(occ, key=lambda o: (o[1], o[0]))
