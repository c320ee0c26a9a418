"""
Bounded search toward smaller braid index using braid isotopy, destabilization
of either sign and exchange moves, plus reordering of transcripts so that every
negative destabilization comes after every transversal move.

Search states are cyclic words, reduced up to commuting letters.  Neighbours
come from the braid relations applied at any cyclic position (commutation,
the braid relation and its mixed sign forms), insertion of a cancelling pair
when the length budget allows, the half-twist flip, and exchange moves.
Every edge is recorded as a conjugation (plus the exchange record where one
is used), so the returned transcripts replay exactly.
"""

from __future__ import annotations

import dataclasses
import heapq
import itertools
from typing import Iterator, Optional, Sequence

from .canonical import Verdict, conjugate_closed
from .core import BraidWord, component_count, cyclic_reduce, exponent_sum, free_reduce
from .moves import (
    BudgetExceeded, LoopCarrier, MoveError, MoveRecord, Transcript, TranscriptBuilder,
    apply_move, conj_record, exchange, exchange_as_stab_destab, exchange_split, loop_position,
    record, swap_kinks, verify_transcript,
)

DEFAULT_BUDGET = 20_000


def _sgn(k: int) -> int:
    return 1 if k > 0 else -1


def _inv(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-k for k in reversed(letters))


def delta_letters(n: int) -> tuple[int, ...]:
    """A positive word for the half twist on n strands."""
    out: list[int] = []
    for i in range(1, n):
        out.extend(range(i, 0, -1))
    return tuple(out)


def flip(letters: Sequence[int], n: int) -> tuple[int, ...]:
    """Image under conjugation by the half twist: sigma_i -> sigma_{n-i}."""
    return tuple(_sgn(k) * (n - abs(k)) for k in letters)


def rotation_key(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    return min(letters[i:] + letters[:i] for i in range(len(letters)))


def local_rewrites(r: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Braid-relation rewrites of the first two or three letters of r."""
    if len(r) >= 2:
        a, b = r[0], r[1]
        if abs(abs(a) - abs(b)) >= 2:
            yield (b, a) + r[2:]
    if len(r) >= 3:
        a, b, c = r[0], r[1], r[2]
        if abs(abs(a) - abs(b)) == 1:
            if a == c and _sgn(a) == _sgn(b):
                yield (b, a, b) + r[3:]
            if a == -c:
                d, e = _sgn(a), _sgn(b)
                yield (-d * abs(b), e * abs(a), d * abs(b)) + r[3:]


def commute_reduce(r: Sequence[int]) -> tuple[int, ...]:
    """Cancel pairs x ... x^-1 whose intervening letters all commute with x."""
    out = list(r)
    j = 0
    while j < len(out):
        x = out[j]
        for k in range(j + 1, len(out)):
            if out[k] == -x:
                del out[k], out[j]
                j = -1
                break
            if abs(abs(out[k]) - abs(x)) < 2:
                break
        j += 1
    return tuple(out)


def commute_cyclic_reduce(letters: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Cyclic reduction up to commuting letters.  Returns ``(reduced, c)`` with
    reduced equal to c^-1 . word . c as braids.
    """
    red, c = cyclic_reduce(commute_reduce(letters))
    k = 1
    while k < len(red):
        r = red[k:] + red[:k]
        r2 = commute_reduce(r)
        if len(r2) < len(r):
            head = red[:k]
            red, c2 = cyclic_reduce(r2)
            c = c + head + c2
            k = 1
        else:
            k += 1
    return red, c


@dataclasses.dataclass
class SearchStats:
    budget: int
    used: int = 0

    @property
    def exhausted(self) -> bool:
        return self.used >= self.budget


def _top_count(letters: Sequence[int], n: int) -> int:
    return sum(1 for k in letters if abs(k) == n - 1)


def _merge(records: list[MoveRecord]) -> list[MoveRecord]:
    """Fuse runs of conjugations into one record each."""
    out: list[MoveRecord] = []
    for r in records:
        if out and r.kind == "conjugate" and out[-1].kind == "conjugate":
            prev = out[-1]
            out[-1] = conj_record(tuple(prev.arg("by", ())) + tuple(r.arg("by", ())), r.arg("to"))
        else:
            out.append(r)
    return out


def _neighbours(w: tuple[int, ...], n: int, cap: int, use_exchange: bool):
    """Yield (records, new word) pairs; the new word is cyclically reduced."""
    L = len(w)
    seen = set()

    def finish(records, v):
        red, c = commute_cyclic_reduce(v)
        if red != v:
            records = records + [conj_record(c, red)]
        if red in seen:
            return None
        seen.add(red)
        return records, red

    for k in range(L):
        r = w[k:] + w[:k]
        for v in local_rewrites(r):
            out = finish([conj_record(w[:k], v)], v)
            if out:
                yield out
        if L + 2 <= cap:
            for i in range(1, n):
                for x in (i, -i):
                    if r and (r[0] == -x):
                        continue
                    padded = (x, -x) + r
                    for v in local_rewrites(padded[1:]):
                        v2 = (x,) + v
                        out = finish([conj_record(w[:k], v2)], v2)
                        if out:
                            yield out
    if n > 2:
        v = flip(w, n)
        out = finish([conj_record(delta_letters(n), v)], v)
        if out:
            yield out
    if use_exchange and n > 2:
        split = exchange_split(BraidWord(n, w))
        if split is not None:
            v = exchange(BraidWord(n, w), split).letters
            out = finish([record("exchange", split=split)], v)
            if out:
                yield out


def find_loop(w: BraidWord, sign: Optional[int] = None, budget: int = 10_000,
              use_exchange: bool = False, growth: int = 2,
              stats: Optional[SearchStats] = None) -> Optional[Transcript]:
    """
    Best-first search for a representative in which sigma_{n-1} occurs exactly
    once (with the given sign, if any).  Returns the transcript leading there,
    or None if the budget runs out or the bounded space is exhausted.
    """
    n = w.strands
    if n < 2:
        return None
    stats = stats or SearchStats(budget)
    red, c = commute_cyclic_reduce(w.letters)
    start_records = [conj_record(c, red)] if red != w.letters else []
    cap = len(red) + growth

    def goal(v):
        occ = [k for k in v if abs(k) == n - 1]
        return len(occ) == 1 and (sign is None or _sgn(occ[0]) == sign)

    def priority(v):
        occ = [k for k in v if abs(k) == n - 1]
        pen = 0 if (sign is None and occ and occ[0] > 0) or (sign is not None) else 1
        return (len(occ) if occ else 99, pen, len(v), rotation_key(v))

    parents: dict[tuple, tuple] = {rotation_key(red): (None, [], red)}
    heap = [(priority(red), red)]
    while heap:
        _, v = heapq.heappop(heap)
        if goal(v):
            records = []
            key = rotation_key(v)
            while True:
                parent, recs, _ = parents[key]
                records[:0] = recs
                if parent is None:
                    break
                key = parent
            return Transcript(w, tuple(_merge(start_records + records)), BraidWord(n, v))
        if stats.used >= stats.budget:
            return None
        stats.used += 1
        for recs, u in _neighbours(v, n, cap, use_exchange):
            key = rotation_key(u)
            if key in parents:
                continue
            parents[key] = (rotation_key(v), recs, u)
            heapq.heappush(heap, (priority(u), u))
    return None


# ---------------------------------------------------------------- reduction

@dataclasses.dataclass(frozen=True)
class ReduceResult:
    word: BraidWord
    transcript: Transcript
    budget_used: int
    budget_exhausted: bool

    def summary(self) -> dict:
        def inv(v: BraidWord) -> dict:
            e = exponent_sum(v)
            return {"n": v.strands, "e": e, "beta": e - v.strands}
        return {
            "initial": inv(self.transcript.start),
            "final": inv(self.word),
            "neg_destabs": self.transcript.count("destabilize", -1),
            "budget_used": self.budget_used,
            "budget_exhausted": self.budget_exhausted,
        }


def _normalize_support(b: TranscriptBuilder) -> None:
    """Make sure sigma_{n-1} occurs, moving unused outer strands inward."""
    w = b.word
    n = w.strands
    if not w.letters or n < 2:
        return
    if any(abs(k) == n - 1 for k in w.letters):
        return
    if any(abs(k) == 1 for k in w.letters):
        b.conjugate(delta_letters(n), flip(w.letters, n))
        return
    shift = n - 1 - max(abs(k) for k in w.letters)
    cyc = tuple(range(1, n))
    target = tuple(_sgn(k) * (abs(k) + shift) for k in w.letters)
    b.conjugate(_inv(cyc) * shift, target)


def reduce(w: BraidWord, budget: Optional[int] = None, use_exchange: bool = True) -> ReduceResult:
    """Drive w toward fewer strands; returns the best word found and its transcript."""
    stats = SearchStats(DEFAULT_BUDGET if budget is None else budget)
    b = TranscriptBuilder(w)
    exhausted = False
    while b.word.strands > 1:
        red, c = commute_cyclic_reduce(b.word.letters)
        b.conjugate(c, red)
        if not b.word.letters:
            break
        _normalize_support(b)
        cur = b.word
        n = cur.strands
        if _top_count(cur.letters, n) != 1 and sum(1 for k in cur.letters if abs(k) == 1) == 1 and n > 2:
            b.conjugate(delta_letters(n), flip(cur.letters, n))
            cur = b.word
        if _top_count(cur.letters, n) != 1:
            found = find_loop(cur, None, use_exchange=False, stats=stats)
            if found is None and use_exchange and not stats.exhausted:
                found = find_loop(cur, None, use_exchange=True, stats=stats)
            if found is None:
                exhausted = stats.exhausted
                break
            for r in found.records:
                b.add(r, check=False)
        pos = loop_position(b.word)
        b.rotate(pos + 1)
        b.add(record("destabilize", _sgn(b.word.letters[-1])))
    t = b.build()
    return ReduceResult(t.end, t, stats.used, exhausted)


def is_unlink_reducible(w: BraidWord, budget: Optional[int] = None) -> tuple[bool, Transcript]:
    """True with a witness if w reduces to the trivial m-braid, m = number of components."""
    m = component_count(w)
    res = reduce(w, budget)
    ok = not res.word.letters and res.word.strands == m
    return ok, res.transcript


# ---------------------------------------------------------------- reordering

@dataclasses.dataclass(frozen=True)
class ReorderResult:
    transcript: Transcript
    ok: bool
    message: str = ""


def _is_s2(r: MoveRecord) -> bool:
    return r.kind == "conjugate" or (r.kind == "destabilize" and r.sign == -1)


def _to_bottom(n: int, p: int) -> tuple[int, ...]:
    """Braid moving the strand at position p down to position 1."""
    return tuple(range(p - 1, 0, -1))


def _to_top(n: int, p: int) -> tuple[int, ...]:
    """Braid moving the strand at position p up to position n."""
    return tuple(range(p, n))


class _Carry:
    """
    A negative trivial loop carried along the moves of another transcript.

    The loop sits on the outermost strand after a body that equals g^-1 V g
    as a braid, V being the word the original transcript has reached.
    Conjugations of V only change g.  A transversal move of V is applied with
    the whole word turned upside down: the body is first made equal to a
    flipped conjugate of V, then conjugation by the half twist puts the loop
    on the lowest strand, where it is out of the way of anything the move
    does on the top strands.
    """

    def __init__(self, word: BraidWord, budget: int):
        self.b = TranscriptBuilder(word)
        t = loop_position(word)
        self.carrier = LoopCarrier(self.b)
        self.g: tuple[int, ...] = word.letters[:t]
        self.budget = budget

    def _check_budget(self) -> None:
        if len(self.b.records) > self.budget:
            raise BudgetExceeded(f"carried loop needed more than {self.budget} moves")

    def _cheapest(self, candidates):
        """candidates: (z, payload) with body target z^-1 V z; pick the cheapest feasible."""
        best = None
        for z, payload in candidates:
            cost = self.carrier.conj_cost(free_reduce(_inv(self.g) + tuple(z)))
            if cost is not None and (best is None or cost < best[0]):
                best = (cost, z, payload)
        if best is None:
            raise BudgetExceeded("the loop cannot reach a strand of its own component")
        return best[1], best[2]

    def lift(self, V: BraidWord, r: MoveRecord) -> BraidWord:
        """Apply the move r (taking V to the returned word) underneath the loop."""
        self._check_budget()
        if r.kind == "conjugate":
            by = tuple(r.arg("by", ()))
            self.g = free_reduce(_inv(by) + self.g)
            return apply_move(V, r, check=False)
        if r.kind == "slide_step":
            cur = V
            for s in r.arg("via", ()):
                cur = self.lift(cur, s)
            return cur
        if not r.transversal or r.kind == "flype":
            raise MoveError(f"cannot carry a trivial loop past {r.kind}({r.sign})")
        n = V.strands
        out = apply_move(V, r, check=False)
        rotations = range(len(V)) if r.kind != "stabilize" else [0]
        # conjugators that commute with every letter the move touches
        reach = n - 1 if r.kind == "stabilize" else n - 2
        lows = [()] + [_to_bottom(n, p) for p in range(2, reach + 1)]
        candidates = []
        for k, c in itertools.product(rotations, lows):
            z = V.letters[:k] + c
            star = free_reduce(_inv(c) + V.letters[k:] + V.letters[:k] + c)
            candidates.append((z + delta_letters(n), (k, c, star)))
        try:
            _, (k, c, star) = self._cheapest(candidates)
        except BudgetExceeded:
            if r.kind != "exchange":
                return self._kink_move(V, r, out)
            # last resort: the exchange as stabilize(+), isotopy, destabilize(+)
            cur = V
            for sub in exchange_as_stab_destab(V, r.arg("split"), self.budget).records:
                cur = self.lift(cur, sub)
            return cur
        self._flipped_move(BraidWord(n, star), r, V.letters[:k] + c)
        if r.kind == "destabilize":
            t = loop_position(V)
            k = k - 1 if t < k else k
        self.g = out.letters[:k] + c + delta_letters(out.strands)
        return out

    def _kink_move(self, V: BraidWord, r: MoveRecord, out: BraidWord) -> BraidWord:
        """Positive loops next to the carried one: trade signs with an exchange."""
        if r.kind == "destabilize":
            t = loop_position(V)
            P = V.letters[: t + 1]
            self.carrier.set_body(V.letters[t + 1:] + P, free_reduce(_inv(self.g) + P))
            swap_kinks(self.b)
            self.b.add(record("destabilize", 1))
            self.g = V.letters[:t]
        else:
            self.carrier.set_body(V.letters, _inv(self.g))
            self.b.add(record("stabilize", 1))
            swap_kinks(self.b)
            self.g = ()
        self.carrier = LoopCarrier(self.b)
        return out

    def _flipped_move(self, star: BraidWord, r: MoveRecord, z: Sequence[int]) -> None:
        n = star.strands
        self.carrier.set_body(flip(star.letters, n), free_reduce(_inv(self.g) + tuple(z) + delta_letters(n)))
        body, loop = self.carrier.body, self.carrier.loop
        self.b.conjugate(body, (loop,) + body, check=False)
        N = n + 1
        self.b.conjugate(delta_letters(N), flip((loop,) + body, N))
        if r.kind == "exchange":
            self.b.add(record("exchange", split=exchange_split(self.b.word)))
        else:
            self.b.add(record(r.kind, r.sign))
        cur = self.b.word
        self.b.conjugate(_inv(delta_letters(cur.strands)), flip(cur.letters, cur.strands))
        self.b.rotate(1)
        self.carrier = LoopCarrier(self.b)

    def close(self, V: BraidWord) -> None:
        """Remove the loop with a negative destabilization and land exactly on V."""
        n = V.strands
        tops = [()] + [_to_top(n, p) for p in range(1, n - 1)]
        candidates = []
        for k, c in itertools.product(range(max(len(V), 1)), tops):
            z = V.letters[:k] + c
            candidates.append((z, free_reduce(_inv(c) + V.letters[k:] + V.letters[:k] + c)))
        candidates.append((delta_letters(n), flip(V.letters, n)))
        z, star = self._cheapest(candidates)
        self.carrier.set_body(star, free_reduce(_inv(self.g) + tuple(z)))
        self.b.add(record("destabilize", -1))
        self.b.conjugate(_inv(z), V.letters)
        self._check_budget()


def reorder_transcript(t: Transcript, budget: int = 10_000) -> ReorderResult:
    """
    Push every negative destabilization to the end.  The result splits into a
    prefix of transversal moves and a suffix of conjugations and negative
    destabilizations; its end word equals the original end word.
    """
    records = list(t.records)
    try:
        while True:
            j = len(records)
            while j > 0 and _is_s2(records[j - 1]):
                j -= 1
            i = max((k for k in range(j) if records[k].kind == "destabilize" and records[k].sign == -1),
                    default=None)
            if i is None:
                break
            words = [t.start]
            for r in records[:j]:
                words.append(_apply(words[-1], r))
            carry = _Carry(words[i], budget)
            V = words[i + 1]
            for k in range(i + 1, j):
                V = carry.lift(V, records[k])
            carry.close(V)
            records = records[:i] + carry.b.records + records[j:]
    except (MoveError, BudgetExceeded) as exc:
        return ReorderResult(t, False, f"reordering witness not found: {exc}")
    out = Transcript(t.start, tuple(records), t.end)
    if not verify_transcript(out):
        return ReorderResult(t, False, "reordered transcript failed to replay")
    if conjugate_closed(out.end, t.end).verdict is not Verdict.YES:  # pragma: no cover
        return ReorderResult(t, False, "end states are not conjugate")
    return ReorderResult(out, True, "")


def _apply(w: BraidWord, r: MoveRecord) -> BraidWord:
    return apply_move(w, r, check=False)


def split_point(t: Transcript) -> int:
    """Index of the first record of the trailing block of conjugations and negative destabilizations."""
    j = len(t.records)
    while j > 0 and _is_s2(t.records[j - 1]):
        j -= 1
    return j


def is_reordered(t: Transcript) -> bool:
    """Every negative destabilization comes after every non-conjugation transversal move."""
    j = split_point(t)
    return all(not (r.kind == "destabilize" and r.sign == -1) for r in t.records[:j])
