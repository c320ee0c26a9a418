"""
Garside left normal form and the conjugacy test for braids.

A simple element (positive permutation braid) is stored as a 0-based tuple
``p`` with ``p[i]`` the bottom position of the strand that starts at top
position i.  A braid is ``Delta^inf * A_1 ... A_k`` with every adjacent pair
left-weighted; this is unique, so it decides the word problem.  Closed braids
are compared through super summit sets, reached by cycling and decycling and
then closed under conjugation by simple elements.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import itertools
from collections import deque
from typing import Iterable, Optional, Sequence

from .core import BraidError, BraidWord, component_count, cycles, exponent_sum, free_reduce, permutation

Perm = tuple[int, ...]


# ---------------------------------------------------------------- simple elements

@functools.lru_cache(maxsize=None)
def identity(n: int) -> Perm:
    return tuple(range(n))


@functools.lru_cache(maxsize=None)
def delta(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def inverse_perm(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


@functools.lru_cache(maxsize=1 << 16)
def starting_set(p: Perm) -> frozenset[int]:
    """Generators j (0-based) with sigma_j a left divisor of p."""
    return frozenset(j for j in range(len(p) - 1) if p[j] > p[j + 1])


@functools.lru_cache(maxsize=1 << 16)
def finishing_set(p: Perm) -> frozenset[int]:
    """Generators j (0-based) with sigma_j a right divisor of p."""
    inv = inverse_perm(p)
    return frozenset(j for j in range(len(p) - 1) if inv[j] > inv[j + 1])


def tau(p: Perm) -> Perm:
    """Conjugation by Delta, which sends sigma_i to sigma_{n-i}."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - i] for i in range(n))


def tau_power(p: Perm, k: int) -> Perm:
    return tau(p) if k % 2 else p


def _times_generator(p: Perm, j: int) -> Perm:
    # p * sigma_j: swap the strands ending at positions j, j+1
    return tuple(j + 1 if v == j else j if v == j + 1 else v for v in p)


def _generator_divide(p: Perm, j: int) -> Perm:
    # sigma_j^-1 * p, for j in the starting set of p
    q = list(p)
    q[j], q[j + 1] = q[j + 1], q[j]
    return tuple(q)


def left_complement_of_inverse(p: Perm) -> Perm:
    """The simple element Delta * p^-1."""
    n = len(p)
    inv = inverse_perm(p)
    return tuple(inv[n - 1 - k] for k in range(n))


def simple_letters(p: Perm) -> tuple[int, ...]:
    """A positive word (1-based letters) for a simple element."""
    out = []
    q = p
    while True:
        s = starting_set(q)
        if not s:
            return tuple(out)
        j = min(s)
        out.append(j + 1)
        q = _generator_divide(q, j)


def generator_perm(n: int, j: int) -> Perm:
    return _times_generator(identity(n), j)


@functools.lru_cache(maxsize=1 << 18)
def left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Make the pair (a, b) left-weighted without changing the product a*b."""
    while True:
        movable = starting_set(b) - finishing_set(a)
        if not movable:
            return a, b
        j = min(movable)
        a = _times_generator(a, j)
        b = _generator_divide(b, j)


# ---------------------------------------------------------------- normal forms

@dataclasses.dataclass(frozen=True, order=True)
class NormalForm:
    strands: int
    inf: int
    factors: tuple[Perm, ...] = ()

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def to_word(self) -> BraidWord:
        n = self.strands
        d = simple_letters(delta(n))
        letters: list[int] = []
        if self.inf >= 0:
            letters.extend(d * self.inf)
        else:
            letters.extend(tuple(-k for k in reversed(d)) * (-self.inf))
        for f in self.factors:
            letters.extend(simple_letters(f))
        return BraidWord(n, tuple(letters))

    def to_json(self) -> dict:
        return {
            "strands": self.strands,
            "inf": self.inf,
            "factors": [[v + 1 for v in f] for f in self.factors],
        }


def _absorb(n: int, inf: int, factors: list[Perm]) -> NormalForm:
    d, e = delta(n), identity(n)
    lead = 0
    while lead < len(factors) and factors[lead] == d:
        lead += 1
    end = len(factors)
    while end > lead and factors[end - 1] == e:
        end -= 1
    return NormalForm(n, inf + lead, tuple(factors[lead:end]))


def _push_right(factors: list[Perm], x: Perm) -> None:
    """Right-multiply a left-weighted factor list by a simple element, in place."""
    factors.append(x)
    for i in range(len(factors) - 2, -1, -1):
        a, b = left_weight(factors[i], factors[i + 1])
        if a == factors[i]:
            break
        factors[i], factors[i + 1] = a, b


def normalize(n: int, inf: int, factors: Iterable[Perm]) -> NormalForm:
    """Normal form of Delta^inf * f_1 * f_2 * ... for arbitrary simple f_i."""
    out: list[Perm] = []
    e = identity(n)
    for f in factors:
        if f != e:
            _push_right(out, f)
    return _absorb(n, inf, out)


def normal_form(w: BraidWord) -> NormalForm:
    n = w.strands
    inf = 0
    out: list[Perm] = []
    for k in w.letters:
        j = abs(k) - 1
        if k > 0:
            _push_right(out, generator_perm(n, j))
        else:
            # F * sigma_j^-1 = Delta^-1 * tau(F) * (Delta sigma_j^-1)
            inf -= 1
            out = [tau(f) for f in out]
            _push_right(out, left_complement_of_inverse(generator_perm(n, j)))
        if out and (out[0] == delta(n) or out[-1] == identity(n)):
            nf = _absorb(n, inf, out)
            inf, out = nf.inf, list(nf.factors)
    return _absorb(n, inf, out)


def multiply(x: NormalForm, y: NormalForm) -> NormalForm:
    n = x.strands
    head = [tau_power(f, y.inf) for f in x.factors]
    return normalize(n, x.inf + y.inf, head + list(y.factors))


def inverse(x: NormalForm) -> NormalForm:
    n = x.strands
    # (Delta^p A_1..A_k)^-1 = A_k^-1 .. A_1^-1 Delta^-p, and A^-1 = Delta^-1 (Delta A^-1)
    k = len(x.factors)
    parts = []
    for idx, a in enumerate(reversed(x.factors)):
        # move the Delta^-1 of this factor, and of all later ones, to the front
        c = left_complement_of_inverse(a)
        parts.append(tau_power(c, k - idx - 1))
    nf = normalize(n, -k, parts)
    return multiply(nf, NormalForm(n, -x.inf, ()))


def conjugate_by_simple(x: NormalForm, c: Perm) -> NormalForm:
    """c^-1 * x * c for a simple element c."""
    n = x.strands
    front = tau_power(left_complement_of_inverse(c), x.inf)
    return normalize(n, x.inf - 1, (front, *x.factors, c))


def equal_as_braids(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise BraidError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    return normal_form(w1) == normal_form(w2)


def conjugate_word(w: BraidWord, g: BraidWord) -> BraidWord:
    """The word g^-1 w g, freely reduced."""
    return BraidWord(w.strands, free_reduce(g.inverse().letters + w.letters + g.letters))


# ---------------------------------------------------------------- summit sets

def cycling(x: NormalForm) -> tuple[NormalForm, Perm]:
    """Returns (c(x), g) with c(x) = g^-1 x g and g positive simple."""
    if not x.factors:
        return x, identity(x.strands)
    g = tau_power(x.factors[0], x.inf)
    return normalize(x.strands, x.inf, (*x.factors[1:], g)), g


def decycling(x: NormalForm) -> tuple[NormalForm, Perm]:
    """Returns (d(x), a) with d(x) = a x a^-1, a the final factor."""
    if not x.factors:
        return x, identity(x.strands)
    a = x.factors[-1]
    return normalize(x.strands, x.inf, (tau_power(a, x.inf), *x.factors[:-1])), a


def _letters(p: Perm) -> tuple[int, ...]:
    return simple_letters(p)


def _inv_letters(p: Perm) -> tuple[int, ...]:
    return tuple(-k for k in reversed(simple_letters(p)))


def summit_representative(x: NormalForm) -> tuple[NormalForm, tuple[int, ...]]:
    """
    Walk to the super summit set by iterated cycling then decycling.
    Returns (y, g) with y = g^-1 x g, g as a letter tuple.
    """
    conj: list[int] = []
    seen = {x}
    while x.factors:
        y, g = cycling(x)
        conj.extend(_letters(g))
        if y.inf > x.inf:
            seen = {y}
        elif y in seen:
            x = y
            break
        else:
            seen.add(y)
        x = y
    seen = {x}
    while x.factors:
        y, a = decycling(x)
        conj.extend(_inv_letters(a))
        if y.sup < x.sup:
            seen = {y}
        elif y in seen:
            x = y
            break
        else:
            seen.add(y)
        x = y
    return x, free_reduce(conj)


@functools.lru_cache(maxsize=16)
def all_simples(n: int) -> tuple[Perm, ...]:
    e = identity(n)
    return tuple(p for p in itertools.permutations(range(n)) if p != e)


class BudgetExhausted(Exception):
    pass


def super_summit_set(x: NormalForm, budget: int = 10_000,
                     target: Optional[NormalForm] = None) -> dict[NormalForm, tuple[int, ...]]:
    """
    Breadth-first closure of a super summit element under simple conjugations.
    Maps each element y to a conjugator g (letters) with y = g^-1 x g.  Stops
    early once ``target`` is found.  Raises BudgetExhausted past ``budget``
    elements.
    """
    found = {x: ()}
    queue = deque([x])
    if target is not None and x == target:
        return found
    simples = all_simples(x.strands)
    while queue:
        y = queue.popleft()
        gy = found[y]
        for c in simples:
            z = conjugate_by_simple(y, c)
            if z.inf != x.inf or z.sup != x.sup or z in found:
                continue
            found[z] = gy + _letters(c)
            if target is not None and z == target:
                return found
            if len(found) > budget:
                raise BudgetExhausted(f"super summit set exceeds {budget} elements")
            queue.append(z)
    return found


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclasses.dataclass(frozen=True)
class ConjugacyResult:
    verdict: Verdict
    witness: Optional[BraidWord] = None

    def __bool__(self):
        return self.verdict is Verdict.YES

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _cycle_type(w: BraidWord) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in cycles(permutation(w))))


def conjugate_closed(w1: BraidWord, w2: BraidWord, budget: int = 10_000) -> ConjugacyResult:
    """
    Decide whether the closures of w1 and w2 are braid isotopic, i.e. whether
    w2 = g^-1 w1 g for some braid g.  A YES carries g.
    """
    if w1.strands != w2.strands:
        raise BraidError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    if exponent_sum(w1) != exponent_sum(w2) or _cycle_type(w1) != _cycle_type(w2):
        return ConjugacyResult(Verdict.NO)
    x1, g1 = summit_representative(normal_form(w1))
    x2, g2 = summit_representative(normal_form(w2))
    if (x1.inf, x1.sup) != (x2.inf, x2.sup):
        return ConjugacyResult(Verdict.NO)
    try:
        orbit = super_summit_set(x1, budget=budget, target=x2)
    except BudgetExhausted:
        return ConjugacyResult(Verdict.BUDGET_EXHAUSTED)
    if x2 not in orbit:
        return ConjugacyResult(Verdict.NO)
    h = orbit[x2]
    # x2 = h^-1 x1 h, x1 = g1^-1 w1 g1, x2 = g2^-1 w2 g2  =>  w2 = g^-1 w1 g, g = g1 h g2^-1
    g = free_reduce(g1 + h + tuple(-k for k in reversed(g2)))
    witness = normal_form(BraidWord(w1.strands, g)).to_word()
    if len(witness) > len(g):
        witness = BraidWord(w1.strands, g)
    return ConjugacyResult(Verdict.YES, witness)


def summit_key(w: BraidWord, budget: int = 10_000) -> NormalForm:
    """Least element of the super summit set: a complete conjugacy invariant."""
    x, _ = summit_representative(normal_form(w))
    return min(super_summit_set(x, budget=budget))
