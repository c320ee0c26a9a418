"""
HOMFLY polynomial of closed braids by skein recursion.

Convention: a*P(L+) - a^-1*P(L-) = z*P(L0) and P(unknot) = 1, so a split
unknot contributes the factor delta = (a - a^-1)/z.  Polynomials are Laurent
polynomials in a and z with integer coefficients, stored sparsely.

The evaluator simplifies the word (free and cyclic reduction, Markov
destabilization at either end, splitting at an unused generator) and otherwise
switches the first crossing at which the diagram fails to be descending.  A
descending closed braid diagram is an unlink.
"""

from __future__ import annotations

import os
from typing import Iterator, Mapping

from .core import BraidError, BraidWord, cyclic_reduce

DEFAULT_BUDGET = 24


class HomflyBudgetExceeded(BraidError):
    """The word is longer than the skein evaluator is allowed to handle."""


class HomflyPoly:
    """Sparse Laurent polynomial: (a exponent, z exponent) -> nonzero integer."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, a: int = 0, z: int = 0, coeff: int = 1) -> HomflyPoly:
        return cls({(a, z): coeff})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, HomflyPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: HomflyPoly) -> HomflyPoly:
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return HomflyPoly(out)

    def __neg__(self) -> HomflyPoly:
        return HomflyPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: HomflyPoly) -> HomflyPoly:
        return self + (-other)

    def __mul__(self, other: HomflyPoly) -> HomflyPoly:
        out: dict[tuple[int, int], int] = {}
        for (a1, z1), c1 in self._terms.items():
            for (a2, z2), c2 in other._terms.items():
                key = (a1 + a2, z1 + z2)
                out[key] = out.get(key, 0) + c1 * c2
        return HomflyPoly(out)

    def __pow__(self, k: int) -> HomflyPoly:
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def shift(self, da: int, dz: int) -> HomflyPoly:
        return HomflyPoly({(a + da, z + dz): c for (a, z), c in self._terms.items()})

    def a_exponents(self) -> list[int]:
        return sorted({a for a, _ in self._terms})

    def z_exponents(self) -> list[int]:
        return sorted({z for _, z in self._terms})

    def to_json(self) -> list[list[int]]:
        return [[a, z, c] for (a, z), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> HomflyPoly:
        return cls({(int(a), int(z)): int(c) for a, z, c in data})

    def __repr__(self) -> str:
        return f"HomflyPoly({self.to_json()})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, z), c in sorted(self._terms.items()):
            mono = "".join(
                f"{v}^{e}" if e != 1 else v for v, e in (("a", a), ("z", z)) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = HomflyPoly.monomial()
DELTA = HomflyPoly({(1, -1): 1, (-1, -1): -1})


def _budget_from_env() -> int:
    value = os.environ.get("BRAIDLAB_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


def _key(n: int, letters: tuple[int, ...]) -> tuple:
    if not letters:
        return (n, ())
    return (n, min(letters[i:] + letters[:i] for i in range(len(letters))))


def _first_bad_crossing(n: int, letters: tuple[int, ...]) -> tuple[int | None, int]:
    """
    Walk the closure component by component, each from its smallest top
    position.  Return the index of the first crossing that is first met on the
    under strand (None if the diagram is descending) and the component count.

    In sigma_i the strand moving from position i to i+1 passes over; in its
    inverse the strand moving from i+1 to i passes over.
    """
    L = len(letters)
    seen = [False] * L
    visited_start = [False] * n
    components = 0
    for start in range(n):
        if visited_start[start]:
            continue
        components += 1
        pos = start
        while True:
            visited_start[pos] = True
            for t, k in enumerate(letters):
                i = abs(k) - 1
                if pos == i:
                    over = k > 0
                    pos = i + 1
                elif pos == i + 1:
                    over = k < 0
                    pos = i
                else:
                    continue
                if not seen[t]:
                    if not over:
                        return t, components
                    seen[t] = True
            if pos == start:
                break
    return None, components


class _Evaluator:
    def __init__(self):
        self.memo: dict[tuple, HomflyPoly] = {}

    def __call__(self, n: int, letters: tuple[int, ...]) -> HomflyPoly:
        letters, _ = cyclic_reduce(letters)
        if not letters:
            return DELTA ** (n - 1)
        key = _key(n, letters)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        value = self._evaluate(n, letters)
        self.memo[key] = value
        return value

    def _evaluate(self, n: int, letters: tuple[int, ...]) -> HomflyPoly:
        counts = [0] * n
        for k in letters:
            counts[abs(k)] += 1
        # Markov destabilization at the outer or inner end
        if counts[n - 1] == 1:
            return self(n - 1, tuple(k for k in letters if abs(k) != n - 1))
        if counts[1] == 1:
            rest = tuple(k for k in letters if abs(k) != 1)
            return self(n - 1, tuple(k - 1 if k > 0 else k + 1 for k in rest))
        # an unused generator splits the closure into two pieces
        for j in range(1, n):
            if counts[j] == 0:
                left = tuple(k for k in letters if abs(k) < j)
                right = tuple(k - j if k > 0 else k + j for k in letters if abs(k) > j)
                return DELTA * self(j, left) * self(n - j, right)
        t, components = _first_bad_crossing(n, letters)
        if t is None:
            return DELTA ** (components - 1)
        k = letters[t]
        switched = letters[:t] + (-k,) + letters[t + 1:]
        smoothed = letters[:t] + letters[t + 1:]
        if k > 0:
            # P+ = a^-2 P- + a^-1 z P0
            return self(n, switched).shift(-2, 0) + self(n, smoothed).shift(-1, 1)
        # P- = a^2 P+ - a z P0
        return self(n, switched).shift(2, 0) - self(n, smoothed).shift(1, 1)


def homfly(w: BraidWord, budget: int | None = None) -> HomflyPoly:
    """HOMFLY polynomial of the closure of w."""
    limit = _budget_from_env() if budget is None else budget
    if len(w) > limit:
        raise HomflyBudgetExceeded(f"word has {len(w)} letters, skein budget is {limit}")
    return _Evaluator()(w.strands, w.letters)


def mfw_bound(p: HomflyPoly) -> int:
    """Morton-Franks-Williams lower bound on braid index: a-breadth/2 + 1."""
    if not p:
        raise BraidError("the zero polynomial has no a-breadth")
    exps = p.a_exponents()
    return (exps[-1] - exps[0]) // 2 + 1
