from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from braidlab import (
    BraidWord, Verdict, conjugate_closed, equal_as_braids, is_unlink_reducible, reorder_transcript,
    verify_transcript,
)
from braidlab.cabling import torus_braid
from braidlab.canonical import conjugate_word
from braidlab.moves import Transcript, record, replay, stabilize, total_beta_ledger
from braidlab.reduce import (
    commute_cyclic_reduce, commute_reduce, delta_letters, find_loop, flip, is_reordered,
    local_rewrites, reduce, rotation_key, split_point,
)
from braidlab.samples import scrambled_unlink
from conftest import braid_words
from oracles import artin_equal


def test_delta_flip():
    for n in (2, 3, 4, 5):
        d = BraidWord(n, delta_letters(n))
        assert len(d) == n * (n - 1) // 2
        for i in range(1, n):
            lhs = BraidWord(n, d.inverse().letters + (i,) + d.letters)
            assert artin_equal(lhs, BraidWord(n, flip((i,), n)))


@given(braid_words(2, 5, 8))
def test_local_rewrites_preserve_the_braid(w):
    for r in local_rewrites(w.letters):
        assert artin_equal(BraidWord(w.strands, r), w)


@given(braid_words(2, 6, 12))
def test_commutation_reductions_preserve_the_braid(w):
    r = commute_reduce(w.letters)
    assert len(r) <= len(w) and artin_equal(BraidWord(w.strands, r), w)
    red, c = commute_cyclic_reduce(w.letters)
    g = BraidWord(w.strands, c)
    assert artin_equal(BraidWord(w.strands, red), BraidWord(w.strands, g.inverse().letters + w.letters + c))


def test_commute_reduce_by_hand():
    assert commute_reduce((5, 1, -2, -5, 3)) == (1, -2, 3)
    assert commute_reduce((2, 1, -2)) == (2, 1, -2)
    assert commute_cyclic_reduce((3, 1, 2, -1, -3)) == ((2,), (3, 1))


def test_rotation_key():
    assert rotation_key((2, 1, 3)) == (1, 3, 2)
    assert rotation_key(()) == ()


def test_sigma1_in_two_strands():
    ok, t = is_unlink_reducible(BraidWord(2, (1,)))
    assert ok and verify_transcript(t)
    assert t.end == BraidWord(1)


def test_mixed_two_letter_word():
    res = reduce(BraidWord(3, (1, -2)))
    assert res.word == BraidWord(1)
    s = res.summary()
    assert s["initial"]["beta"] == -3 and s["final"]["beta"] == -1
    assert s["neg_destabs"] == 1
    assert not s["budget_exhausted"]


def test_two_component_unlink():
    # sigma1 sigma3^-1 closes to two split unknots
    ok, t = is_unlink_reducible(BraidWord(4, (1, -3)))
    assert ok
    assert t.end == BraidWord(2)


def test_trefoil_is_already_minimal():
    res = reduce(BraidWord(2, (1, 1, 1)))
    assert res.word == BraidWord(2, (1, 1, 1))
    assert not res.budget_exhausted


def test_torus_knot_on_more_strands_reduces_transversally():
    # the q-strand picture of T(p, q) destabilizes positively down to p strands
    for p, q in ((2, 3), (2, 5), (3, 4)):
        res = reduce(torus_braid(1, q, p))
        s = res.summary()
        assert res.word.strands == p
        assert s["neg_destabs"] == 0
        assert s["initial"]["beta"] == s["final"]["beta"] == (p - 1) * q - p
        assert verify_transcript(res.transcript)


def test_find_loop_reaches_single_top_letter():
    # a conjugate of the stabilized trefoil sigma1^3 sigma2
    w = conjugate_word(BraidWord(3, (1, 1, 1, 2)), BraidWord(3, (2, 1, 2)))
    assert sum(1 for k in w.letters if abs(k) == 2) > 1
    t = find_loop(w)
    assert t is not None and verify_transcript(t)
    assert sum(1 for k in t.end.letters if abs(k) == 2) == 1


def test_budget_exhaustion_is_flagged():
    w = stabilize(stabilize(BraidWord(2, (1, 1, 1)), -1), 1)
    w = BraidWord(w.strands, (3, 2, 1) + w.letters + (-1, -2, -3))
    res = reduce(w, budget=0)
    assert res.budget_exhausted or res.word.strands <= 2


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_scrambled_unlinks_reduce_with_checked_transcripts(seed):
    w = scrambled_unlink(random.Random(seed))
    ok, t = is_unlink_reducible(w)
    assert ok
    assert replay(t.start, t.records) == t.end
    led = total_beta_ledger(t)
    assert led[-1] - led[0] == 2 * t.count("destabilize", -1) - 2 * t.count("stabilize", -1)


def test_reorder_moves_negative_destabilization_last():
    # a negative destabilization followed by a positive stabilization and a conjugation
    w = BraidWord(3, (1, -2))
    records = (
        record("destabilize", -1),
        record("stabilize", 1),
        record("conjugate", by=(2, 1)),
    )
    t = Transcript(w, records, replay(w, records))
    assert not is_reordered(t)
    res = reorder_transcript(t)
    assert res.ok, res.message
    out = res.transcript
    assert verify_transcript(out) and is_reordered(out)
    assert out.end == t.end
    j = split_point(out)
    led = total_beta_ledger(out)
    assert len(set(led[:j + 1])) == 1
    assert conjugate_closed(out.end, t.end).verdict is Verdict.YES


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_reorder_on_reduction_transcripts(seed):
    w = scrambled_unlink(random.Random(seed))
    _, t = is_unlink_reducible(w)
    res = reorder_transcript(t)
    assert res.ok, res.message
    out = res.transcript
    assert verify_transcript(out) and is_reordered(out)
    assert equal_as_braids(out.end, t.end)
    assert out.count("destabilize", -1) == t.count("destabilize", -1)
