"""
Moves on closed braids, each with exact bookkeeping of strand count, exponent
sum and Bennequin number, plus replayable transcripts.

Every move is a deterministic rewrite of a braid word:

conjugate(by, to)
    braid isotopy.  Without ``to`` the result is the freely reduced word
    by^-1 . w . by; with ``to`` the result is ``to``, which must equal
    by^-1 . w . by as a braid.  ``by = ()`` with ``to`` is a rewrite by braid
    relations.
stabilize(sign)
    append sigma_n^sign on a new strand.
destabilize(sign)
    delete the only letter of index n-1, which must carry ``sign``.
exchange(split)
    A s^e B s^-e C  ->  A s^-e B s^e C, s = sigma_{n-1}, A, B, C free of s.
flype(sign, blocks)
    s1^P s2^Q s1^R s2^sign  ->  s1^P s2^sign s1^R s2^Q on three strands.
slide_step(via, to)
    a trivial-loop slide certified by conjugations and exchanges (``via``).
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Optional, Sequence

from .canonical import Verdict, conjugate_closed, conjugate_word, equal_as_braids
from .core import (
    BraidError, BraidWord, bennequin, component_count, exponent_sum, free_reduce, permutation,
)


class MoveError(BraidError):
    """A move was applied to a word outside its template."""


class BudgetExceeded(RuntimeError):
    """A bounded search or construction gave up before finding a witness."""


# (kind, sign) -> (delta_n, delta_e, transversal); delta_beta is derived
MOVE_TABLE = {
    ("conjugate", 0): (0, 0, True),
    ("stabilize", 1): (1, 1, True),
    ("stabilize", -1): (1, -1, False),
    ("destabilize", 1): (-1, -1, True),
    ("destabilize", -1): (-1, 1, False),
    ("exchange", 0): (0, 0, True),
    ("flype", 1): (0, 0, True),
    ("flype", -1): (0, 0, False),
    ("slide_step", 0): (0, 0, True),
}


def _tuplify(value):
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


@dataclasses.dataclass(frozen=True)
class MoveRecord:
    kind: str
    sign: int = 0
    args: tuple = ()

    def __post_init__(self):
        if (self.kind, self.sign) not in MOVE_TABLE:
            raise MoveError(f"unknown move {self.kind}({self.sign})")

    @property
    def delta_n(self) -> int:
        return MOVE_TABLE[self.kind, self.sign][0]

    @property
    def delta_e(self) -> int:
        return MOVE_TABLE[self.kind, self.sign][1]

    @property
    def delta_beta(self) -> int:
        return self.delta_e - self.delta_n

    @property
    def transversal(self) -> bool:
        return MOVE_TABLE[self.kind, self.sign][2]

    def arg(self, name, default=None):
        return dict(self.args).get(name, default)

    def to_json(self) -> dict:
        args = {}
        for key, value in self.args:
            if key == "via":
                args[key] = [r.to_json() for r in value]
            elif isinstance(value, tuple):
                args[key] = list(value)
            else:
                args[key] = value
        if self.sign:
            args["sign"] = self.sign
        return {"kind": self.kind, "args": args}

    @classmethod
    def from_json(cls, data: dict) -> MoveRecord:
        try:
            args = dict(data.get("args", {}))
            sign = int(args.pop("sign", 0))
            if "via" in args:
                args["via"] = tuple(cls.from_json(r) for r in args["via"])
            args = {k: _tuplify(v) for k, v in args.items()}
            return cls(data["kind"], sign, tuple(sorted(args.items())))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise MoveError(f"malformed move record: {data!r}") from exc


def record(kind: str, sign: int = 0, **args) -> MoveRecord:
    return MoveRecord(kind, sign, tuple(sorted(args.items())))


def conj_record(by: Sequence[int], to: Sequence[int]) -> MoveRecord:
    return record("conjugate", by=tuple(by), to=tuple(to))


# ---------------------------------------------------------------- rewrites

def stabilize(w: BraidWord, sign: int) -> BraidWord:
    """Append a trivial loop sigma_n^sign on a new outermost strand."""
    if sign not in (1, -1):
        raise MoveError("stabilization sign must be +1 or -1")
    n = w.strands
    return BraidWord(n + 1, w.letters + (sign * n,))


def top_occurrences(w: BraidWord) -> list[int]:
    top = w.strands - 1
    return [i for i, k in enumerate(w.letters) if abs(k) == top]


def destabilize_exact(w: BraidWord, sign: int) -> BraidWord:
    """Remove the unique top-index letter, which must have the given sign."""
    if w.strands < 2:
        raise MoveError("cannot destabilize a 1-strand braid")
    occ = top_occurrences(w)
    if len(occ) != 1:
        raise MoveError(f"sigma_{w.strands - 1} occurs {len(occ)} times, need exactly once")
    i = occ[0]
    if (w.letters[i] > 0) != (sign > 0):
        raise MoveError(f"trivial loop has sign {1 if w.letters[i] > 0 else -1}, not {sign}")
    return BraidWord(w.strands - 1, w.letters[:i] + w.letters[i + 1:])


def exchange_split(w: BraidWord) -> Optional[tuple[int, int]]:
    """Positions of the two distinguished letters if w fits the exchange template."""
    occ = top_occurrences(w)
    if len(occ) != 2 or w.letters[occ[0]] != -w.letters[occ[1]]:
        return None
    return occ[0], occ[1]


def exchange(w: BraidWord, split: Optional[Sequence[int]] = None) -> BraidWord:
    """
    A s^e B s^-e C  ->  A s^-e B s^e C with s = sigma_{n-1}; the boxes must
    avoid s.  A trailing box C is allowed since it is a rotation away from A.
    """
    top = w.strands - 1
    if top < 1:
        raise MoveError("exchange needs at least two strands")
    if split is None:
        split = exchange_split(w)
        if split is None:
            raise MoveError("word does not fit the exchange template")
    i, j = split
    if not (0 <= i < j < len(w)):
        raise MoveError(f"bad split positions {tuple(split)}")
    a, b = w.letters[i], w.letters[j]
    if abs(a) != top or abs(b) != top:
        raise MoveError(f"distinguished letters must be sigma_{top}^(+-1)")
    if a != -b:
        raise MoveError("second distinguished letter has wrong sign")
    if any(abs(k) == top for p, k in enumerate(w.letters) if p not in (i, j)):
        raise MoveError(f"boxes must avoid sigma_{top}")
    letters = list(w.letters)
    letters[i], letters[j] = b, a
    return BraidWord(w.strands, tuple(letters))


def _runs(letters: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of equal letters as (letter, length)."""
    out: list[tuple[int, int]] = []
    for k in letters:
        if out and out[-1][0] == k:
            out[-1] = (k, out[-1][1] + 1)
        else:
            out.append((k, 1))
    return out


def flype_blocks(w: BraidWord) -> tuple[int, int, int, int]:
    """Read a 3-braid as s1^P s2^Q s1^R s2^sign and return (P, Q, R, sign)."""
    if w.strands != 3:
        raise MoveError("flypes are defined on 3-braids")
    if not w.letters or abs(w.letters[-1]) != 2:
        raise MoveError("no trailing sigma_2^(+-1) block separable")
    sign = 1 if w.letters[-1] > 0 else -1
    pattern = (1, 2, 1)
    exps = [0, 0, 0]
    slot = 0
    for k, length in _runs(w.letters[:-1]):
        while slot < 3 and pattern[slot] != abs(k):
            slot += 1
        if slot == 3:
            raise MoveError("word does not match s1^P s2^Q s1^R s2^(+-1)")
        exps[slot] = length if k > 0 else -length
        slot += 1
    return exps[0], exps[1], exps[2], sign


def _power(i: int, e: int) -> tuple[int, ...]:
    return (i if e > 0 else -i,) * abs(e)


def flype_word(P: int, Q: int, R: int, sign: int) -> BraidWord:
    """The template word s1^P s2^Q s1^R s2^sign."""
    return BraidWord(3, _power(1, P) + _power(2, Q) + _power(1, R) + (2 * sign,))


def flype3(w: BraidWord, sign: int) -> BraidWord:
    P, Q, R, s = flype_blocks(w)
    if s != sign:
        raise MoveError(f"isolated crossing has sign {s}, not {sign}")
    return BraidWord(3, _power(1, P) + (2 * s,) + _power(1, R) + _power(2, Q))


# ---------------------------------------------------------------- transcripts

@dataclasses.dataclass(frozen=True)
class Transcript:
    start: BraidWord
    records: tuple[MoveRecord, ...]
    end: BraidWord

    def words(self) -> list[BraidWord]:
        """The word before every move, followed by the final word."""
        out = [self.start]
        for r in self.records:
            out.append(apply_move(out[-1], r))
        return out

    def count(self, kind: str, sign: int = 0) -> int:
        return sum(1 for r in self.records if r.kind == kind and r.sign == sign)

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "moves": [r.to_json() for r in self.records],
            "end": self.end.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> Transcript:
        try:
            return cls(
                BraidWord.from_json(data["start"]),
                tuple(MoveRecord.from_json(m) for m in data["moves"]),
                BraidWord.from_json(data["end"]),
            )
        except (KeyError, TypeError) as exc:
            raise MoveError("malformed transcript JSON") from exc


def apply_move(w: BraidWord, r: MoveRecord, check: bool = True) -> BraidWord:
    kind = r.kind
    if kind == "conjugate":
        g = r.arg("by", ())
        target = r.arg("to")
        if target is None:
            return conjugate_word(w, BraidWord(w.strands, g))
        out = BraidWord(w.strands, target)
        if check:
            conj = BraidWord(w.strands, tuple(-k for k in reversed(g)) + w.letters + tuple(g))
            if not equal_as_braids(conj, out):
                raise MoveError("conjugation target is not the stated conjugate")
        return out
    if kind == "stabilize":
        return stabilize(w, r.sign)
    if kind == "destabilize":
        return destabilize_exact(w, r.sign)
    if kind == "exchange":
        return exchange(w, r.arg("split"))
    if kind == "flype":
        P, Q, R, _ = flype_blocks(w)
        blocks = r.arg("blocks")
        if blocks is not None and tuple(blocks) != (P, Q, R):
            raise MoveError("flype record does not match the word")
        return flype3(w, r.sign)
    if kind == "slide_step":
        v = w
        for sub in r.arg("via", ()):
            if sub.kind not in ("conjugate", "exchange"):
                raise MoveError("a slide is built from conjugations and exchanges only")
            v = apply_move(v, sub, check)
        target = r.arg("to")
        if target is not None and tuple(target) != v.letters:
            raise MoveError("slide target does not match its certificate")
        return v
    raise MoveError(f"unknown move kind {kind}")


def replay(start: BraidWord, records: Iterable[MoveRecord], check: bool = True) -> BraidWord:
    w = start
    for r in records:
        w = apply_move(w, r, check)
    return w


def verify_transcript(t: Transcript) -> bool:
    try:
        return replay(t.start, t.records) == t.end
    except BraidError:
        return False


class TranscriptBuilder:
    """Accumulates moves from a start word, applying each as it is added."""

    def __init__(self, start: BraidWord):
        self.start = start
        self.word = start
        self.records: list[MoveRecord] = []

    def add(self, r: MoveRecord, check: bool = True) -> BraidWord:
        self.word = apply_move(self.word, r, check)
        self.records.append(r)
        return self.word

    def conjugate(self, by: Sequence[int], to: Sequence[int], check: bool = True) -> BraidWord:
        if not by and tuple(to) == self.word.letters:
            return self.word
        return self.add(conj_record(by, to), check)

    def rotate(self, k: int) -> BraidWord:
        """Cyclic rotation moving the first k letters to the end."""
        letters = self.word.letters
        if not letters:
            return self.word
        k %= len(letters)
        if k == 0:
            return self.word
        return self.conjugate(letters[:k], letters[k:] + letters[:k], check=False)

    def rotate_to(self, target: Sequence[int]) -> bool:
        """Rotate onto ``target`` if it is a cyclic rotation of the current word."""
        cur = self.word.letters
        target = tuple(target)
        if len(cur) != len(target):
            return False
        for k in range(max(len(cur), 1)):
            if cur[k:] + cur[:k] == target:
                self.rotate(k)
                return True
        return False

    def build(self) -> Transcript:
        return Transcript(self.start, tuple(self.records), self.word)


def beta_ledger(t: Transcript) -> list[int]:
    """Bennequin number before the first move and after every move."""
    out = []
    for w in t.words():
        if component_count(w) != 1:
            raise BraidError("intermediate closure is not a knot")
        out.append(bennequin(w))
    return out


def total_beta_ledger(t: Transcript) -> list[int]:
    """e - n after every move; for links this is the sum over components."""
    return [exponent_sum(w) - w.strands for w in t.words()]


# ---------------------------------------------------------------- trivial loops

def _inv(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-k for k in reversed(letters))


def loop_position(w: BraidWord) -> Optional[int]:
    """Position of the trivial loop on the outermost strand, if there is one."""
    occ = top_occurrences(w)
    return occ[0] if len(occ) == 1 else None


def stabilizer_factors(s: Sequence[int], m: int) -> list[tuple]:
    """
    Factor a braid on m strands that returns the strand at position m to
    position m.  Factors are ('low', (x,)) with x avoiding sigma_{m-1}, and
    ('sq', u, sign) standing for u^-1 sigma_{m-1}^(2 sign) u with u avoiding
    sigma_{m-1}.  Their product equals s as a braid.
    """
    out: list[tuple] = []
    j = m  # current position of the tracked strand
    for x in s:
        i = abs(x)
        if i < j - 1:
            out.append(("low", (x,)))
        elif i > j:
            out.append(("low", (x - 1 if x > 0 else x + 1,)))
        elif i == j - 1:
            if x < 0:
                out.append(("sq", tuple(range(m - 2, j - 2, -1)), -1))
            j -= 1
        else:
            if x > 0:
                out.append(("sq", tuple(range(m - 2, j - 1, -1)), 1))
            j += 1
    if j != m:
        raise MoveError("braid does not return the outermost strand")
    return out


class LoopCarrier:
    """
    Keeps a word in the form Y . sigma_b^eps (b = strands - 1, Y avoiding
    sigma_b) and records every change in a builder.  The body Y can be
    conjugated by arbitrary braids while the loop stays put, using
    conjugations and exchange moves only.
    """

    def __init__(self, builder: TranscriptBuilder):
        self.b = builder
        w = builder.word
        pos = loop_position(w)
        if pos is None:
            raise MoveError("no trivial loop on the outermost strand")
        if pos != len(w) - 1:
            builder.rotate(pos + 1)

    @property
    def body(self) -> tuple[int, ...]:
        return self.b.word.letters[:-1]

    @property
    def loop(self) -> int:
        return self.b.word.letters[-1]

    @property
    def m(self) -> int:
        """Strand count of the body."""
        return self.b.word.strands - 1

    def conj_low(self, g: Sequence[int]) -> None:
        """Body becomes g^-1 Y g for g avoiding sigma_{m-1}; g commutes with the loop."""
        if not g:
            return
        body = free_reduce(_inv(g) + self.body + tuple(g))
        self.b.conjugate(g, body + (self.loop,), check=False)

    def conj_square(self, sign: int) -> None:
        """Body becomes its conjugate by sigma_{m-1}^(2 sign); one exchange move."""
        top, b = self.m - 1, self.m
        if top < 1:
            return
        eps = 1 if self.loop > 0 else -1
        delta = -sign
        h = (delta * top,)
        Z = free_reduce(h + self.body + _inv(h))
        # h Y h^-1 . h s_b^eps h^-1  =  Z . s_b^-delta s_top^eps s_b^delta
        self.b.conjugate(_inv(h), Z + (-delta * b, eps * top, delta * b))
        self.b.add(record("exchange", split=(len(Z), len(Z) + 2)))
        # Z s_b^delta s_top^eps s_b^-delta  =  Z h^-1 s_b^eps h
        self.b.conjugate(_inv(h), free_reduce(h + Z + _inv(h)) + (eps * b,))

    def _factorization(self, c: Sequence[int]) -> Optional[list[tuple]]:
        """Cheapest stabilizer factorization of Y^k c over k, or None."""
        m = self.m
        Y = self.body
        best = None
        for k in range(-m, m + 1):
            power = Y * k if k >= 0 else _inv(Y) * (-k)
            cand = free_reduce(power + tuple(c))
            if permutation(BraidWord(m, cand))[m - 1] != m - 1:
                continue
            factors = stabilizer_factors(cand, m)
            cost = sum(1 for f in factors if f[0] == "sq")
            if best is None or cost < best[0]:
                best = (cost, factors)
        return None if best is None else best[1]

    def conj_cost(self, c: Sequence[int]) -> Optional[int]:
        """Number of exchange moves conj(c) would use, or None if it cannot keep the loop."""
        if not c or all(abs(x) < self.m - 1 for x in c):
            return 0
        factors = self._factorization(c)
        return None if factors is None else sum(1 for f in factors if f[0] == "sq")

    def conj(self, c: Sequence[int]) -> None:
        """
        Body becomes c^-1 Y c as a braid.  Works whenever some Y^k c fixes
        the outermost strand, which is always the case when Y closes to a knot.
        """
        m = self.m
        if not c:
            return
        if all(abs(x) < m - 1 for x in c):
            self.conj_low(c)
            return
        factors = self._factorization(c)
        if factors is None:
            raise BudgetExceeded("conjugator moves the loop to another component")
        pending: list[int] = []
        for factor in factors:
            if factor[0] == "low":
                pending.extend(factor[1])
                continue
            _, u, sign = factor
            pending.extend(_inv(u))
            self.conj_low(free_reduce(pending))
            self.conj_square(sign)
            pending = list(u)
        self.conj_low(free_reduce(pending))

    def set_body(self, target: Sequence[int], c: Sequence[int] = ()) -> None:
        """Conjugate the body by c, then rewrite it to ``target`` letter for letter."""
        self.conj(c)
        self.b.conjugate((), tuple(target) + (self.loop,))


def slide_trivial_loop(w: BraidWord, loop_pos: int, crossing_pos: int) -> Transcript:
    """
    Move the trivial loop at ``loop_pos`` to the other side of the adjacent
    letter at ``crossing_pos`` (the two letters trade places).  The transcript
    uses conjugations and exchange moves only.  If the named letter is not
    adjacent to the loop the transcript is empty.
    """
    if w.strands < 2 or loop_position(w) != loop_pos:
        raise MoveError(f"no trivial loop at position {loop_pos}")
    L = len(w)
    if L < 2 or crossing_pos == loop_pos or crossing_pos not in ((loop_pos + 1) % L, (loop_pos - 1) % L):
        return Transcript(w, (), w)
    letters = list(w.letters)
    letters[loop_pos], letters[crossing_pos] = letters[crossing_pos], letters[loop_pos]
    target = tuple(letters)
    x = w.letters[crossing_pos]
    b = TranscriptBuilder(w)
    carrier = LoopCarrier(b)
    Y = carrier.body
    if crossing_pos == (loop_pos + 1) % L:
        carrier.set_body(Y[1:] + Y[:1], (x,))
    else:
        carrier.set_body(Y[-1:] + Y[:-1], (-x,))
    if not b.rotate_to(target):  # pragma: no cover - construction lands on a rotation
        raise MoveError("slide did not land on a rotation of the target")
    return b.build()


def swap_kinks(b: TranscriptBuilder) -> None:
    """
    U s_a^d s_b^-d  ->  U s_a^-d s_b^d  with a = n-2, b = n-1 and U avoiding
    both: trade the signs of a kink and the outer trivial loop hanging off it
    using a conjugation, an exchange and a conjugation.
    """
    w = b.word
    a, bb = w.strands - 2, w.strands - 1
    U, tail = w.letters[:-2], w.letters[-2:]
    d = 1 if tail and tail[0] > 0 else -1
    if a < 1 or tail != (d * a, -d * bb) or any(abs(k) >= a for k in U):
        raise MoveError("word is not of the form U s_a^d s_b^-d")
    if d == 1:
        b.conjugate((bb,), U + (a, bb, -a, -bb))
        b.add(record("exchange", split=(len(U) + 1, len(U) + 3)))
        b.conjugate((-bb,), U + (-a, bb))
    else:
        b.conjugate((bb,), U + (a, -bb, -a, bb))
        b.add(record("exchange", split=(len(U) + 1, len(U) + 3)))
        b.conjugate((-bb,), U + (a, -bb))


# ---------------------------------------------------------------- exchanges

def exchange_as_stab_destab(w: BraidWord, split: Optional[Sequence[int]] = None,
                            budget: int = 10_000) -> Transcript:
    """
    Realize one exchange move with conjugations, a single positive
    stabilization and a single positive destabilization.  The transcript ends
    exactly at exchange(w, split).

    With the word rotated to A s^e B s^-e (s the top generator), the kink is
    added to the side whose distinguished letter is s after conjugating by
    s^-1, and to the other side after rotating to its s^-1 and conjugating
    by s.  The two stabilized words are conjugate; the conjugacy oracle
    supplies the witness.  A few other placements are tried if the oracle
    runs out of budget.
    """
    target = exchange(w, split)
    b = TranscriptBuilder(w)
    if equal_as_braids(w, target):
        b.conjugate((), target.letters)
        return b.build()
    i, j = split if split is not None else exchange_split(w)
    if j + 1 < len(w):
        b.rotate(j + 1)
    rot = b.word
    n = rot.strands
    top = n - 1
    i_rot = i + len(w) - (j + 1)
    ex = exchange(rot, (i_rot, len(rot) - 1))

    def kink_sites(word: BraidWord) -> list[tuple[int, ...]]:
        # conjugators g with g^-1 word g the word that gets stabilized
        rest = word.letters[:i_rot]
        first = ((-top,), rest + (top,))
        if word.letters[i_rot] < 0:
            first = first[::-1]
        others = [_inv(rest), (), (top,), (-top,), rest + (-top,), (top, top), (-top, -top)]
        return list(first) + [g for g in others if g not in first]

    src_sites, dst_sites = kink_sites(rot), kink_sites(ex)
    pairs = [(src_sites[0], dst_sites[0])]
    pairs += [(g, h) for g in src_sites[:3] for h in dst_sites[:3] if (g, h) not in pairs]
    for g, h in pairs:
        src = _inv(g) + rot.letters + g
        dst = _inv(h) + ex.letters + h
        stab_src = stabilize(BraidWord(n, src), 1)
        stab_dst = stabilize(BraidWord(n, dst), 1)
        res = conjugate_closed(stab_src, stab_dst, budget)
        if res.verdict is not Verdict.YES:
            continue
        b.conjugate(g, src)
        b.add(record("stabilize", 1))
        b.conjugate(res.witness.letters, stab_dst.letters)
        b.add(record("destabilize", 1))
        b.conjugate(_inv(h), ex.letters)
        b.rotate_to(target.letters)
        return b.build()
    raise BudgetExceeded("no stabilize/destabilize witness for this exchange within budget")


def destabilize(w: BraidWord, sign: int, budget: int = 10_000) -> Optional[tuple[BraidWord, Transcript]]:
    """
    Search the closed braid for a representative u . sigma_{n-1}^sign and
    remove the trivial loop.  Returns None when nothing is found within the
    budget, which is not a proof that none exists.
    """
    if w.strands < 2:
        return None
    from .reduce import find_loop  # reduce imports this module
    found = find_loop(w, sign, budget=budget, use_exchange=False)
    if found is None:
        return None
    b = TranscriptBuilder(w)
    for r in found.records:
        b.add(r, check=False)
    b.rotate(loop_position(b.word) + 1)
    b.add(record("destabilize", sign))
    t = b.build()
    return t.end, t


# ---------------------------------------------------------------- families

def wrap_braid(n: int) -> tuple[int, ...]:
    """Pure braid in which the strand at position n-1 loops once around positions 1..n-2."""
    down = tuple(range(n - 2, 0, -1))
    return down + tuple(reversed(down))


def family_generator(R: BraidWord, S: BraidWord, k: int) -> list[BraidWord]:
    """
    Words R_j . s . S . s^-1 (s = sigma_{n-1}, j = 0..k) where R_j is R with
    the distinguished strand wrapped j more times around it.  Consecutive words
    are related by one exchange move and braid isotopy (see family_transcript).
    """
    if R.strands != S.strands:
        raise BraidError("R and S must live on the same strand count")
    if k < 0:
        raise BraidError("k must be nonnegative")
    n = R.strands + 1
    top = n - 1
    M = wrap_braid(n)
    out = []
    for j in range(k + 1):
        Rj = free_reduce(_inv(M) * j + R.letters + M * j)
        out.append(BraidWord(n, Rj + (top,) + S.letters + (-top,)))
    return out


def family_transcript(w: BraidWord) -> Transcript:
    """
    From A s B s^-1 to (M^-1 A M) s B s^-1: one exchange, then a conjugation.
    With L = s M s the outer strand's full loop, L commutes with A and B, so
    A s^-1 B s = A M s B s^-1 M^-1.
    """
    top = w.strands - 1
    split = exchange_split(w)
    if split is None or split[1] != len(w) - 1 or w.letters[split[0]] != top:
        raise MoveError("word is not of the form A s B s^-1")
    i = split[0]
    A, B = w.letters[:i], w.letters[i + 1:-1]
    M = wrap_braid(w.strands)
    b = TranscriptBuilder(w)
    b.add(record("exchange", split=split))
    b.conjugate(M, free_reduce(_inv(M) + A + M) + (top,) + B + (-top,))
    return b.build()
