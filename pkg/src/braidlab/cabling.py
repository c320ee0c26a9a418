"""
Iterated torus knots: descriptors, braided cabling, and closed-form invariants.

A spec is a list of stages e(p, q).  Stage i replaces every strand of the
current braid by p parallel strands, corrects the framing so the blocks follow
a zero-framed longitude, and inserts the torus pattern (sigma_1..sigma_{p-1})^(e q)
on the first block.
"""

from __future__ import annotations

import dataclasses
import math
import re
from typing import Optional

from .canonical import normal_form, summit_representative
from .core import BraidError, BraidWord, component_count, exponent_sum, free_reduce


class CableError(BraidError):
    """Invalid cable descriptor or stage input."""


@dataclasses.dataclass(frozen=True)
class Stage:
    e: int
    p: int
    q: int

    def __str__(self) -> str:
        return f"{'+' if self.e > 0 else '-'}({self.p},{self.q})"


@dataclasses.dataclass(frozen=True)
class CableSpec:
    stages: tuple[Stage, ...] = ()

    def __post_init__(self):
        stages = tuple(s if isinstance(s, Stage) else Stage(*s) for s in self.stages)
        for i, s in enumerate(stages):
            if s.e not in (1, -1):
                raise CableError(f"stage {i}: sign must be +1 or -1")
            if s.p < 1 or s.q < 1:
                raise CableError(f"stage {i}: p and q must be positive")
            if math.gcd(s.p, s.q) != 1:
                raise CableError(f"stage {i}: gcd({s.p},{s.q}) != 1")
        if stages and not stages[0].p < stages[0].q:
            raise CableError("first stage must have p < q")
        object.__setattr__(self, "stages", stages)

    def __str__(self) -> str:
        return ";".join(str(s) for s in self.stages)

    def mirror(self) -> CableSpec:
        return CableSpec(tuple(Stage(-s.e, s.p, s.q) for s in self.stages))

    def to_json(self) -> list:
        return [[s.e, s.p, s.q] for s in self.stages]

    @classmethod
    def from_json(cls, data) -> CableSpec:
        return cls(tuple(Stage(int(e), int(p), int(q)) for e, p, q in data))


_STAGE = re.compile(r"^\s*([+-])\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_spec(text: str) -> CableSpec:
    """Parse ``"+(2,3);-(3,4)"``; the empty string is the unknot."""
    if not text.strip():
        return CableSpec()
    stages = []
    for i, chunk in enumerate(text.split(";")):
        m = _STAGE.match(chunk)
        if not m:
            raise CableError(f"stage {i}: cannot parse {chunk!r}")
        sign, p, q = m.groups()
        stages.append(Stage(1 if sign == "+" else -1, int(p), int(q)))
    return CableSpec(tuple(stages))


def _twist_letters(p: int, k: int, offset: int = 0) -> tuple[int, ...]:
    """(sigma_1 .. sigma_{p-1})^k on strands offset+1..offset+p; k may be negative."""
    base = tuple(range(offset + 1, offset + p))
    if k >= 0:
        return base * k
    return tuple(-x for x in reversed(base)) * (-k)


def torus_braid(e: int, p: int, q: int) -> BraidWord:
    if math.gcd(p, q) != 1:
        raise CableError(f"gcd({p},{q}) != 1")
    if e not in (1, -1):
        raise CableError("sign must be +1 or -1")
    return BraidWord(p, _twist_letters(p, e * q))


def _block_crossing(i: int, sign: int, p: int) -> tuple[int, ...]:
    """p^2 letters crossing block i over block i+1 as rigid bundles."""
    b = (i - 1) * p
    out = []
    for j in range(p):
        out.extend(sign * P for P in range(b + p + j, b + j, -1))
    return tuple(out)


def cable_word(base: BraidWord, a_prev: int, e: int, p: int, q: int) -> BraidWord:
    """
    One cabling stage: block-crossing expansion of ``base``, |a_prev| framing
    full twists of sign -sign(a_prev) on the first block, then the pattern
    (sigma_1..sigma_{p-1})^(e q) on that block.
    """
    if component_count(base) != 1:
        raise CableError("base braid must close to a knot")
    if math.gcd(p, q) != 1:
        raise CableError(f"gcd({p},{q}) != 1")
    letters: list[int] = []
    for k in base.letters:
        letters.extend(_block_crossing(abs(k), 1 if k > 0 else -1, p))
    letters.extend(_twist_letters(p, -p * a_prev))
    letters.extend(_twist_letters(p, e * q))
    return BraidWord(base.strands * p, tuple(letters))


def tighten(w: BraidWord) -> BraidWord:
    """
    Shorten a word without changing its closed braid: free reduction, and when
    the conjugacy class contains a positive (or negative) braid, that braid.
    A positive or negative word has as few letters as any word with the same
    exponent sum can have.
    """
    out = BraidWord(w.strands, free_reduce(w.letters))
    if w.strands < 2:
        return out
    y, _ = summit_representative(normal_form(out))
    if y.inf >= 0:
        candidate = y.to_word()
    else:
        z, _ = summit_representative(normal_form(out.inverse()))
        candidate = z.to_word().inverse() if z.inf >= 0 else None
    if candidate is not None and len(candidate) < len(out):
        return candidate
    return out


def iterated_word(spec: CableSpec, shorten: bool = True) -> BraidWord:
    """Closed braid on prod(p_i) strands representing the iterated torus knot."""
    w = BraidWord(1)
    a = 0
    for s in spec.stages:
        w = cable_word(w, a, s.e, s.p, s.q)
        if shorten:
            w = tighten(w)
        a = s.e * (s.p - 1) * s.q + a * s.p
    return w


def braid_index(spec: CableSpec) -> int:
    return math.prod(s.p for s in spec.stages)


@dataclasses.dataclass(frozen=True)
class CableInvariants:
    a_r: int
    b_r: int
    d: int
    chi: int
    beta_max: int

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def invariants(spec: CableSpec) -> CableInvariants:
    a = b = 0
    for s in spec.stages:
        a = s.e * (s.p - 1) * s.q + a * s.p
        b = (s.p - 1) * s.q + b * s.p
    d = 0
    ps = [s.p for s in spec.stages]
    for i, s in enumerate(spec.stages):
        d += (1 - s.e) * (s.p - 1) * s.q * math.prod(ps[i + 1:])
    n = math.prod(ps)
    beta_max = a - n
    chi = n - b
    if beta_max != -chi - d:
        raise AssertionError(f"closed forms disagree for {spec}: {beta_max} != {-chi - d}")
    return CableInvariants(a, b, d, chi, beta_max)


@dataclasses.dataclass(frozen=True)
class Check:
    name: str
    expected: int
    actual: int

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclasses.dataclass(frozen=True)
class SpecReport:
    spec: CableSpec
    word: BraidWord
    invariants: CableInvariants
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec),
            "strands": self.word.strands,
            "letters": len(self.word),
            "invariants": self.invariants.to_json(),
            "checks": [c.to_json() for c in self.checks],
            "ok": self.ok,
        }


def verify_spec(spec: CableSpec, word: Optional[BraidWord] = None) -> SpecReport:
    """Cross-check the generated braid word against the closed-form invariants."""
    w = iterated_word(spec) if word is None else word
    inv = invariants(spec)
    n = w.strands
    e = exponent_sum(w)
    checks = (
        Check("strands", braid_index(spec), n),
        Check("exponent_sum", inv.a_r, e),
        Check("letter_count", inv.b_r, len(w)),
        Check("bennequin", inv.beta_max, e - n),
        Check("components", 1, component_count(w)),
    )
    return SpecReport(spec, w, inv, checks)


def spec_family() -> list[CableSpec]:
    """The desk-scale family used for cross-validation (prod p <= 12, b_r <= 64)."""
    specs = []
    for e in (1, -1):
        for p, q in ((2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (2, 9), (4, 5)):
            specs.append(CableSpec((Stage(e, p, q),)))
    for e1, e2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        specs.append(CableSpec((Stage(e1, 2, 3), Stage(e2, 3, 4))))
        specs.append(CableSpec((Stage(e1, 2, 3), Stage(e2, 2, 5))))
    for e2 in (1, -1):
        specs.append(CableSpec((Stage(1, 2, 5), Stage(e2, 2, 3))))
        for q in (1, 3, 5):
            specs.append(CableSpec((Stage(1, 3, 4), Stage(e2, 2, q))))
    out = []
    for s in specs:
        inv = invariants(s)
        if braid_index(s) <= 12 and inv.b_r <= 64 and s not in out:
            out.append(s)
    return out
