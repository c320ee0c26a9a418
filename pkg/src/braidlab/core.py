"""
Braid words on n strands and their elementary integer invariants.

A letter is a nonzero signed integer: ``k > 0`` stands for the Artin generator
sigma_k and ``k < 0`` for its inverse.  Strands are numbered 1..n outward from
the braid axis and sigma_k crosses strands at positions k and k+1.  A positive
letter is a positive crossing and contributes +1 to the exponent sum.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Sequence


class BraidError(ValueError):
    """Raised for malformed braid input or a violated precondition."""


class ParseError(BraidError):
    def __init__(self, message: str, position: int):
        super().__init__(f"token {position}: {message}")
        self.position = position


@dataclasses.dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.strands, int) or self.strands < 1:
            raise BraidError(f"strand count must be a positive integer, got {self.strands!r}")
        letters = tuple(int(k) for k in self.letters)
        for pos, k in enumerate(letters):
            if k == 0 or abs(k) > self.strands - 1:
                raise BraidError(
                    f"letter {k} at position {pos} out of range for {self.strands} strands"
                )
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(k) for k in self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise BraidError("cannot multiply braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-k for k in reversed(self.letters)))

    def with_strands(self, strands: int) -> BraidWord:
        """The same letters viewed on a different (large enough) strand count."""
        return BraidWord(strands, self.letters)

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}

    @classmethod
    def from_json(cls, data: dict) -> BraidWord:
        try:
            return cls(int(data["strands"]), tuple(data["letters"]))
        except (KeyError, TypeError) as exc:
            raise BraidError(f"malformed braid JSON: {data!r}") from exc


@dataclasses.dataclass(frozen=True)
class LinkBennequin:
    """Per-component Bennequin numbers of a closed braid, in component order."""
    per_component: tuple[Fraction, ...]

    def __len__(self):
        return len(self.per_component)

    def total(self) -> Fraction:
        return sum(self.per_component, Fraction(0))

    def to_json(self) -> list:
        return [int(v) if v.denominator == 1 else float(v) for v in self.per_component]


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated signed integers, e.g. ``"1 -2 1"``."""
    if not isinstance(strands, int) or strands < 1:
        raise BraidError(f"strand count must be a positive integer, got {strands!r}")
    letters = []
    for pos, token in enumerate(text.split()):
        try:
            k = int(token)
        except ValueError:
            raise ParseError(f"malformed token {token!r}", pos) from None
        if k == 0:
            raise ParseError("zero is not a generator", pos)
        if abs(k) > strands - 1:
            raise ParseError(f"index {abs(k)} out of range for {strands} strands", pos)
        letters.append(k)
    return BraidWord(strands, tuple(letters))


def format_word(w: BraidWord) -> str:
    return str(w)


def permutation(w: BraidWord) -> tuple[int, ...]:
    """
    Strand permutation induced by w, 0-based: ``perm[i]`` is the bottom position
    of the strand that starts at top position i.  Signs are ignored.
    """
    at = list(range(w.strands))  # at[pos] = strand currently at pos
    for k in w.letters:
        i = abs(k) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    perm = [0] * w.strands
    for pos, strand in enumerate(at):
        perm[strand] = pos
    return tuple(perm)


def cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of a 0-based permutation, each starting at its smallest point."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


def component_count(w: BraidWord) -> int:
    return len(cycles(permutation(w)))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if k > 0 else -1 for k in w.letters)


def bennequin(w: BraidWord) -> int:
    """Bennequin number e - n of a closed braid whose closure is a knot."""
    if component_count(w) != 1:
        raise BraidError("closure has several components; use link_bennequin")
    return exponent_sum(w) - w.strands


def strand_components(w: BraidWord) -> list[int]:
    """Map each top position to the index of its closure component."""
    label = [0] * w.strands
    for c, cyc in enumerate(cycles(permutation(w))):
        for j in cyc:
            label[j] = c
    return label


def crossing_strands(w: BraidWord) -> list[tuple[int, int]]:
    """For each letter, the (left, right) top-position labels of the strands it crosses."""
    at = list(range(w.strands))
    out = []
    for k in w.letters:
        i = abs(k) - 1
        out.append((at[i], at[i + 1]))
        at[i], at[i + 1] = at[i + 1], at[i]
    return out


def link_bennequin(w: BraidWord) -> LinkBennequin:
    """
    Bennequin number of every closure component.  A self-crossing adds its sign
    to its component, a crossing between two components adds half its sign to
    each, and each component is charged one per strand it occupies.
    """
    comp = strand_components(w)
    m = max(comp) + 1
    values = [Fraction(0)] * m
    for k, (s1, s2) in zip(w.letters, crossing_strands(w)):
        sign = 1 if k > 0 else -1
        c1, c2 = comp[s1], comp[s2]
        if c1 == c2:
            values[c1] += sign
        else:
            values[c1] += Fraction(sign, 2)
            values[c2] += Fraction(sign, 2)
    for c in comp:
        values[c] -= 1
    return LinkBennequin(tuple(values))


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for k in letters:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def cyclic_reduce(letters: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Cyclically reduce a word.  Returns ``(reduced, conjugator)`` where
    reduced = conjugator^-1 . word . conjugator as free-group words.
    """
    word = free_reduce(letters)
    lo, hi = 0, len(word)
    while hi - lo >= 2 and word[lo] == -word[hi - 1]:
        lo += 1
        hi -= 1
    return word[lo:hi], word[:lo]


def max_index(w: BraidWord) -> int:
    return max((abs(k) for k in w.letters), default=0)
