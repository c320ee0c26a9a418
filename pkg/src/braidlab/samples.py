"""
Seeded generators of test inputs: random words, scrambled stabilized unlinks
and flype templates.
"""

from __future__ import annotations

import random
from typing import Iterator

from .core import BraidWord, component_count, free_reduce
from .moves import flype_word, stabilize
from .reduce import local_rewrites


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    """Uniform letters from sigma_1..sigma_{n-1} and their inverses, freely reduced."""
    if strands < 2:
        return BraidWord(max(strands, 1))
    letters = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]
    return BraidWord(strands, free_reduce(letters))


def scramble(rng: random.Random, w: BraidWord, steps: int = 30) -> BraidWord:
    """Random braid-relation rewrites at random cyclic positions (the braid is unchanged up to conjugacy)."""
    letters = w.letters
    for _ in range(steps):
        if not letters:
            break
        k = rng.randrange(len(letters))
        options = list(local_rewrites(letters[k:] + letters[:k]))
        if options:
            letters = rng.choice(options)
    return BraidWord(w.strands, letters)


def scrambled_unlink(rng: random.Random, max_stabs: int = 5, max_conj: int = 15,
                     max_strands: int = 6, max_len: int = 16) -> BraidWord:
    """
    Start from the trivial 1- or 2-braid, apply up to ``max_stabs``
    stabilizations (mixed signs whenever there are two or more) interleaved
    with up to ``max_conj`` conjugations by single generators, then scramble.
    """
    w = BraidWord(rng.choice((1, 2)))
    count = rng.randint(1, max_stabs)
    signs = [rng.choice((1, -1)) for _ in range(count)]
    if count >= 2 and len(set(signs)) == 1:
        signs[0] = -signs[0]
    conj_left = max_conj
    for s in signs:
        if w.strands >= max_strands:
            break
        w = stabilize(w, s)
        for _ in range(rng.randint(0, 3)):
            if conj_left == 0:
                break
            conj_left -= 1
            x = rng.choice((1, -1)) * rng.randint(1, w.strands - 1)
            letters = free_reduce((-x,) + w.letters + (x,))
            if len(letters) <= max_len:
                w = BraidWord(w.strands, letters)
    return scramble(rng, w)


def flype_templates(bound: int = 7) -> Iterator[tuple[int, int, int, int]]:
    """(P, Q, R, sign) with nonzero exponents up to ``bound`` whose template closes to a knot."""
    rng_range = [k for k in range(-bound, bound + 1) if k]
    for P in rng_range:
        for Q in rng_range:
            for R in rng_range:
                for sign in (1, -1):
                    if component_count(flype_word(P, Q, R, sign)) == 1:
                        yield P, Q, R, sign
