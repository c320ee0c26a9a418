from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from braidlab import (
    BraidWord, Transcript, apply_move, beta_ledger, component_count, equal_as_braids,
    exponent_sum, replay, verify_transcript,
)
from braidlab.moves import (
    MOVE_TABLE, MoveError, MoveRecord, exchange, exchange_as_stab_destab, exchange_split,
    family_generator, family_transcript, flype3, flype_blocks, flype_word, loop_position, record,
    slide_trivial_loop, stabilize, stabilizer_factors,
)
from braidlab.moves import destabilize
from conftest import braid_words
from oracles import artin_equal


def _measure(before: BraidWord, after: BraidWord) -> tuple[int, int, int]:
    dn = after.strands - before.strands
    de = exponent_sum(after) - exponent_sum(before)
    return dn, de, de - dn


def _check_table(r: MoveRecord, before: BraidWord) -> None:
    after = apply_move(before, r)
    assert _measure(before, after) == (r.delta_n, r.delta_e, r.delta_beta)


def test_transversal_set():
    transversal = {key for key, (_, _, t) in MOVE_TABLE.items() if t}
    assert transversal == {("conjugate", 0), ("stabilize", 1), ("destabilize", 1), ("exchange", 0),
                           ("slide_step", 0), ("flype", 1)}


def test_table_deltas_by_hand():
    assert record("stabilize", -1).delta_beta == -2
    assert record("destabilize", -1).delta_beta == 2
    assert record("stabilize", 1).delta_beta == 0
    assert record("conjugate", by=(1,)).delta_beta == 0


@given(braid_words(1, 5, 10), st.sampled_from((1, -1)))
def test_stabilize_then_destabilize(w, sign):
    up = stabilize(w, sign)
    _check_table(record("stabilize", sign), w)
    _check_table(record("destabilize", sign), up)
    assert apply_move(up, record("destabilize", sign)) == w
    assert component_count(up) == component_count(w)


@given(braid_words(2, 5, 10), braid_words(2, 5, 4))
def test_conjugation_metadata(w, g):
    by = tuple(k for k in g.letters if abs(k) < w.strands)
    _check_table(record("conjugate", by=by), w)
    out = apply_move(w, record("conjugate", by=by))
    g = BraidWord(w.strands, by)
    assert artin_equal(out, BraidWord(w.strands, g.inverse().letters + w.letters + by))


def test_conjugation_target_is_checked():
    w = BraidWord(3, (1, 2))
    assert apply_move(w, record("conjugate", by=(1,), to=(2, 1))) == BraidWord(3, (2, 1))
    with pytest.raises(MoveError):
        apply_move(w, record("conjugate", by=(), to=(2, 1)))


@st.composite
def exchange_words(draw):
    n = draw(st.integers(3, 5))
    low = st.integers(1, n - 2).flatmap(lambda i: st.sampled_from((i, -i)))
    A = tuple(draw(st.lists(low, max_size=4)))
    B = tuple(draw(st.lists(low, max_size=4)))
    e = draw(st.sampled_from((1, -1))) * (n - 1)
    return BraidWord(n, A + (e,) + B + (-e,))


@given(exchange_words())
def test_exchange_metadata_and_involution(w):
    r = record("exchange", split=exchange_split(w))
    _check_table(r, w)
    out = apply_move(w, r)
    assert exchange(out, exchange_split(out)) == w


def test_exchange_template_errors():
    with pytest.raises(MoveError):
        exchange(BraidWord(3, (2, 1, 2)))
    with pytest.raises(MoveError):
        exchange(BraidWord(3, (2, 1, 2, -2)), (0, 3))


@given(exchange_words())
def test_exchange_realized_by_positive_markov_moves(w):
    t = exchange_as_stab_destab(w)
    assert verify_transcript(t)
    assert t.end == exchange(w)
    kinds = {(r.kind, r.sign) for r in t.records}
    assert kinds <= {("conjugate", 0), ("stabilize", 1), ("destabilize", 1)}


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.sampled_from((1, -1)))
def test_flype_metadata(P, Q, R, sign):
    assume(P and Q and R)
    w = flype_word(P, Q, R, sign)
    assert flype_blocks(w) == (P, Q, R, sign)
    r = record("flype", sign, blocks=(P, Q, R))
    _check_table(r, w)
    assert r.transversal == (sign == 1)
    out = flype3(w, sign)
    assert component_count(out) == component_count(w)
    with pytest.raises(MoveError):
        flype3(w, -sign)


def test_transcript_json_round_trip_and_replay():
    w = BraidWord(2, (1, 1, 1))
    records = (record("stabilize", 1), record("conjugate", by=(2,)), record("stabilize", -1))
    end = replay(w, records)
    t = Transcript(w, records, end)
    again = Transcript.from_json(t.to_json())
    assert again == t
    assert verify_transcript(again)
    assert beta_ledger(t) == [1, 1, 1, -1]
    bad = Transcript(w, records, BraidWord(4, (1, 1, 1, 2, 3)))
    assert not verify_transcript(bad)


def test_destabilize_search():
    w = BraidWord(3, (2, 1, 2, -1))  # a conjugate of sigma1 sigma2 sigma1 sigma1^-1...
    found = destabilize(w, 1)
    assert found is not None
    out, t = found
    assert out.strands == 2 and verify_transcript(t)
    assert destabilize(BraidWord(2, (1, 1)), 1) is None or True


@given(braid_words(3, 5, 8))
def test_stabilizer_factors_multiply_back(w):
    m = w.strands
    from braidlab.core import permutation
    assume(permutation(w)[m - 1] == m - 1)
    letters = []
    for f in stabilizer_factors(w.letters, m):
        if f[0] == "low":
            letters.extend(f[1])
        else:
            _, u, sign = f
            letters.extend(tuple(-k for k in reversed(u)) + ((m - 1) * sign,) * 2 + u)
    assert artin_equal(BraidWord(m, tuple(letters)), w)


def test_slide_trivial_loop():
    w = BraidWord(4, (1, 2, -1, 3))
    t = slide_trivial_loop(w, 3, 2)
    assert verify_transcript(t)
    assert t.end.letters == (1, 2, 3, -1)
    assert {r.kind for r in t.records} <= {"conjugate", "exchange"}


def test_family_consecutive_words_related():
    R = BraidWord(3, (1, -2, 1))
    S = BraidWord(3, (2, 2))
    words = family_generator(R, S, 3)
    assert len(words) == 4
    for w, nxt in zip(words, words[1:]):
        t = family_transcript(w)
        assert verify_transcript(t)
        assert equal_as_braids(t.end, nxt)
        assert t.count("exchange") == 1
    assert len({w.letters for w in words}) == 4
