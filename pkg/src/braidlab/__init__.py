"""Closed braids: moves with Bennequin bookkeeping, conjugacy, HOMFLY, cabling and reduction search."""

from __future__ import annotations

from .cabling import CableSpec, Stage, invariants as cable_invariants, iterated_word, parse_spec, verify_spec
from .canonical import NormalForm, Verdict, conjugate_closed, equal_as_braids, normal_form
from .core import (
    BraidError, BraidWord, ParseError, bennequin, component_count, exponent_sum, link_bennequin,
    parse_word, permutation,
)
from .homfly import HomflyPoly, homfly, mfw_bound
from .moves import MoveRecord, Transcript, apply_move, beta_ledger, replay, verify_transcript
from .reduce import is_unlink_reducible, reorder_transcript

__all__ = [
    "BraidError", "BraidWord", "CableSpec", "HomflyPoly", "MoveRecord", "NormalForm", "ParseError",
    "Stage", "Transcript", "Verdict", "apply_move", "bennequin", "beta_ledger", "cable_invariants",
    "component_count", "conjugate_closed", "equal_as_braids", "exponent_sum", "homfly",
    "is_unlink_reducible", "iterated_word", "link_bennequin", "mfw_bound", "normal_form",
    "parse_spec", "parse_word", "permutation", "reorder_transcript", "replay",
    "verify_spec", "verify_transcript",
]
