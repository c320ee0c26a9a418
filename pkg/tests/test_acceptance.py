"""
The acceptance suite.  Each test prints one PASS/FAIL line, and the lines are
repeated in the terminal summary.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidlab import (
    BraidWord, Verdict, bennequin, cable_invariants, component_count, conjugate_closed,
    exponent_sum, homfly, is_unlink_reducible, iterated_word, link_bennequin, mfw_bound,
    reorder_transcript, replay, verify_spec, verify_transcript,
)
from braidlab.cabling import spec_family, torus_braid
from braidlab.moves import (
    MOVE_TABLE, apply_move, exchange_split, flype3, flype_word, record, slide_trivial_loop,
    stabilize, total_beta_ledger,
)
from braidlab.reduce import is_reordered, split_point
from braidlab.samples import flype_templates, random_word, scrambled_unlink
from oracles import sl2_class_key, sl2_image

FAMILY = spec_family()
_cache: dict = {}


def _report(report, number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    report(line)


def _unlink_runs():
    """The 100 scrambled unlinks of criterion 4 with their witnesses (computed once)."""
    if "runs" not in _cache:
        rng = random.Random(20240601)
        start = time.perf_counter()
        runs = []
        for _ in range(100):
            w = scrambled_unlink(rng)
            ok, t = is_unlink_reducible(w)
            runs.append((w, ok, t))
        _cache["runs"] = runs
        _cache["runs_time"] = time.perf_counter() - start
    return _cache["runs"], _cache["runs_time"]


def test_criterion_01_cabling_cross_validation(acceptance_report):
    start = time.perf_counter()
    failures, failed_checks = [], set()
    for spec in FAMILY:
        report = verify_spec(spec)
        failed_checks.update(c.name for c in report.failures())
        inv = report.invariants
        closed_ok = inv.beta_max == inv.a_r - report.word.strands == -inv.chi - inv.d
        if not report.ok or not closed_ok:
            failures.append(f"{spec}: " + ", ".join(
                f"{c.name} {c.actual} != {c.expected}" for c in report.failures()))
    elapsed = time.perf_counter() - start
    ok = not failures and len(FAMILY) >= 20 and elapsed < 5
    detail = f"{len(FAMILY) - len(failures)}/{len(FAMILY)} specs exact in {elapsed:.2f}s"
    if failures:
        detail += f"; failing checks {sorted(failed_checks)}; first mismatch " + failures[0]
    _report(acceptance_report, 1, ok, detail)
    assert ok, "\n".join(failures)


def test_criterion_02_bennequin_sharpness_iff_positive(acceptance_report):
    exceptions = []
    for spec in FAMILY:
        w = iterated_word(spec)
        sharp = bennequin(w) == -cable_invariants(spec).chi
        positive = all(s.e > 0 for s in spec.stages)
        if sharp != positive:
            exceptions.append(str(spec))
    ok = not exceptions
    _report(acceptance_report, 2, ok, f"{len(FAMILY)} specs, {len(exceptions)} exceptions")
    assert ok, exceptions


def test_criterion_03_bennequin_bound(acceptance_report):
    bad = [str(s) for s in FAMILY if bennequin(iterated_word(s)) > -cable_invariants(s).chi]
    _report(acceptance_report, 3, not bad, f"{len(FAMILY)} specs, {len(bad)} violations")
    assert not bad


def test_criterion_04_unlinks_reduce(acceptance_report):
    runs, elapsed = _unlink_runs()
    bad = []
    for w, ok, t in runs:
        trivial = t.end == BraidWord(component_count(w))
        if not (ok and trivial and replay(t.start, t.records) == t.end and t.start == w):
            bad.append(str(w))
    ok = not bad and elapsed < 60
    _report(acceptance_report, 4, ok,
            f"{len(runs) - len(bad)}/{len(runs)} reduced and replayed in {elapsed:.1f}s")
    assert ok, bad


def test_criterion_05_beta_ledger(acceptance_report):
    runs, _ = _unlink_runs()
    bad = []
    for w, _, t in runs:
        led = total_beta_ledger(t)
        expected = 2 * t.count("destabilize", -1) - 2 * t.count("stabilize", -1)
        knot_end = component_count(w) != 1 or led[-1] == -1
        if led[-1] - led[0] != expected or not knot_end:
            bad.append(str(w))
    _report(acceptance_report, 5, not bad, f"{len(runs) - len(bad)}/{len(runs)} ledgers exact")
    assert not bad


def test_criterion_06_reordering(acceptance_report):
    runs, _ = _unlink_runs()
    rng = random.Random(7)
    transcripts = [t for _, _, t in runs if t.count("destabilize", -1)]
    while len(transcripts) < 20:  # pragma: no cover - the fixed seed yields enough
        _, t = is_unlink_reducible(scrambled_unlink(rng))
        if t.count("destabilize", -1):
            transcripts.append(t)
    bad = []
    for t in transcripts[:20]:
        res = reorder_transcript(t)
        out = res.transcript
        if not (res.ok and verify_transcript(out) and is_reordered(out)):
            bad.append(f"{t.start}: {res.message}")
            continue
        if conjugate_closed(out.end, t.end).verdict is not Verdict.YES:
            bad.append(f"{t.start}: end states not conjugate")
            continue
        led = total_beta_ledger(out)
        j = split_point(out)
        steps = [led[k + 1] - led[k] for k in range(j, len(out.records))]
        want = [2 if r.kind == "destabilize" else 0 for r in out.records[j:]]
        if len(set(led[:j + 1])) != 1 or steps != want:
            bad.append(f"{t.start}: ledger shape")
    ok = not bad
    _report(acceptance_report, 6, ok, f"{20 - len(bad)}/20 transcripts reordered")
    assert ok, bad


def test_criterion_07_homfly_markov_invariance(acceptance_report):
    rng = random.Random(77)
    start = time.perf_counter()
    bad = []
    for _ in range(50):
        n = rng.randint(2, 4)
        w = random_word(rng, n, rng.randint(0, 10))
        p = homfly(w)
        g = rng.choice((1, -1)) * rng.randint(1, n - 1)
        variants = (BraidWord(n, (-g,) + w.letters + (g,)), stabilize(w, 1), stabilize(w, -1))
        if any(homfly(v) != p for v in variants):
            bad.append(str(w))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    _report(acceptance_report, 7, ok, f"{50 - len(bad)}/50 words invariant in {elapsed:.1f}s")
    assert ok, bad


def test_criterion_08_mfw_torus_knots(acceptance_report):
    cases = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)]
    got = {pq: mfw_bound(homfly(torus_braid(1, *pq))) for pq in cases}
    ok = all(got[(p, q)] == p for p, q in cases)
    _report(acceptance_report, 8, ok, " ".join(f"T{p},{q}->{v}" for (p, q), v in got.items()))
    assert ok


# ---------------------------------------------------------------- criterion 9

@st.composite
def move_instances(draw, kind: str, sign: int):
    """A (word, record) pair for the given move kind and sign."""
    n = draw(st.integers(3, 5))
    low = st.integers(1, n - 2).flatmap(lambda i: st.sampled_from((i, -i)))
    any_letter = st.integers(1, n - 1).flatmap(lambda i: st.sampled_from((i, -i)))
    body = tuple(draw(st.lists(any_letter, max_size=8)))
    if kind == "conjugate":
        by = tuple(draw(st.lists(any_letter, max_size=4)))
        return BraidWord(n, body), record("conjugate", by=by)
    if kind == "stabilize":
        return BraidWord(n, body), record("stabilize", sign)
    if kind == "destabilize":
        u = tuple(draw(st.lists(low, max_size=8)))
        k = draw(st.integers(0, len(u)))
        return BraidWord(n, u[:k] + (sign * (n - 1),) + u[k:]), record("destabilize", sign)
    if kind == "exchange":
        A = tuple(draw(st.lists(low, max_size=4)))
        B = tuple(draw(st.lists(low, max_size=4)))
        e = draw(st.sampled_from((1, -1))) * (n - 1)
        w = BraidWord(n, A + (e,) + B + (-e,))
        return w, record("exchange", split=exchange_split(w))
    if kind == "flype":
        P, Q, R = (draw(st.integers(1, 5)) * draw(st.sampled_from((1, -1))) for _ in range(3))
        return flype_word(P, Q, R, sign), record("flype", sign, blocks=(P, Q, R))
    # slide_step: a certified slide of the outer trivial loop past its neighbour;
    # the body is a conjugate of the cycle 1..n-2 times pure squares, so w is a knot
    g = tuple(draw(st.lists(low, max_size=3)))
    squares = tuple(x for x in draw(st.lists(low, max_size=2)) for _ in range(2))
    u = tuple(-k for k in reversed(g)) + tuple(range(1, n - 1)) + g + squares
    w = BraidWord(n, u + (draw(st.sampled_from((1, -1))) * (n - 1),))
    t = slide_trivial_loop(w, len(u), len(u) - 1)
    return w, record("slide_step", via=t.records, to=t.end.letters)


_measured: dict = {}


def _metadata_matches_table(kind: str, sign: int) -> None:
    @settings(max_examples=40)
    @given(move_instances(kind, sign))
    def check(pair):
        w, r = pair
        out = apply_move(w, r)
        de = exponent_sum(out) - exponent_sum(w)
        dn = out.strands - w.strands
        assert (dn, de, de - dn) == (r.delta_n, r.delta_e, r.delta_beta)
        _measured[(r.kind, r.sign)] = (dn, de, de - dn)

    check()


def test_criterion_09_move_metadata(acceptance_report):
    for kind, sign in sorted(MOVE_TABLE):
        _metadata_matches_table(kind, sign)
    transversal = {key for key, (_, _, t) in MOVE_TABLE.items() if t}
    expected = {("conjugate", 0), ("stabilize", 1), ("destabilize", 1), ("exchange", 0),
                ("slide_step", 0), ("flype", 1)}
    covered = set(_measured) == set(MOVE_TABLE)
    ok = transversal == expected and covered
    _report(acceptance_report, 9, ok,
            f"{len(_measured)}/{len(MOVE_TABLE)} move kinds measured, transversal set "
            f"{'matches' if transversal == expected else 'differs'}")
    assert ok


# ---------------------------------------------------------------- criterion 10

def test_criterion_10_flype_pair(acceptance_report):
    templates = sorted(flype_templates(7), key=lambda x: (abs(x[0]) + abs(x[1]) + abs(x[2]), x))
    found = None
    examined = 0
    for P, Q, R, sign in templates:
        w = flype_word(P, Q, R, sign)
        if len(w) > 24:
            continue
        v = flype3(w, sign)
        examined += 1
        res = conjugate_closed(w, v)
        if res.verdict is Verdict.NO:
            found = (P, Q, R, sign, w, v)
            break
    if found is None:
        _report(acceptance_report, 10, False, f"INCONCLUSIVE: all {examined} sampled pairs conjugate")
        pytest.skip("inconclusive: every sampled flype pair is conjugate")
    P, Q, R, sign, w, v = found
    same_homfly = homfly(w) == homfly(v)
    same_invariants = (w.strands, exponent_sum(w), bennequin(w)) == \
        (v.strands, exponent_sum(v), bennequin(v))
    # second opinion: distinct conjugacy classes of the images in SL(2, Z)
    key_w, key_v = sl2_class_key(sl2_image(w)), sl2_class_key(sl2_image(v))
    confirmed = key_w is not None and key_v is not None and key_w != key_v
    ok = same_homfly and same_invariants and confirmed
    _report(acceptance_report, 10, ok,
            f"(P,Q,R,s)=({P},{Q},{R},{sign}) not conjugate (SL(2,Z) classes {key_w[1]} vs "
            f"{key_v[1]}), HOMFLY and (n,e,beta) equal after {examined} templates")
    assert ok


def test_criterion_11_link_bennequin(acceptance_report):
    trivial = all(link_bennequin(BraidWord(m)).per_component == (Fraction(-1),) * m
                  for m in range(1, 6))
    hopf = link_bennequin(BraidWord(2, (1, 1))).per_component == (0, 0)
    ok = trivial and hopf
    _report(acceptance_report, 11, ok, "trivial m-braids give -1 each (m<=5), sigma1^2 gives (0,0)")
    assert ok
