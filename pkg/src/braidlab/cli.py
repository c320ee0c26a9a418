"""
Command-line interface.  Every subcommand prints one JSON document with
sorted keys.  Exit status: 0 success, 1 domain error, 2 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources
from typing import Optional, Sequence

from .cabling import CableError, invariants as cable_invariants, iterated_word, parse_spec, verify_spec
from .canonical import Verdict, conjugate_closed, equal_as_braids
from .core import BraidError, BraidWord, component_count, exponent_sum, link_bennequin, parse_word
from .homfly import HomflyBudgetExceeded, homfly, mfw_bound
from .moves import (
    BudgetExceeded, MoveError, Transcript, apply_move, destabilize, family_generator,
    family_transcript, record, replay, total_beta_ledger,
)
from .reduce import reduce as reduce_word, reorder_transcript, split_point

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2


class BudgetStop(Exception):
    """Raised inside a command to report budget exhaustion with a payload."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "budget exhausted"))
        self.payload = payload


class DomainStop(Exception):
    """Raised inside a command to report a domain failure with a payload."""

    def __init__(self, payload: dict):
        super().__init__("domain check failed")
        self.payload = payload


def load_defaults() -> dict:
    return json.loads(resources.files("braidlab").joinpath("defaults.json").read_text("utf-8"))


def default_budget(command: str) -> int:
    env = os.environ.get("BRAIDLAB_BUDGET")
    if env:
        return int(env)
    return int(load_defaults()[command])


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _word_from_args(args, text: Optional[str] = None) -> BraidWord:
    text = args.word if text is None else text
    if text is not None:
        if args.strands is None:
            raise BraidError("--strands is required with --word")
        return parse_word(text, args.strands)
    if getattr(args, "input", None):
        data = _read_json(args.input)
        if isinstance(data, dict) and "word" in data:
            data = data["word"]
        return BraidWord.from_json(data)
    raise BraidError("give a word with --word/--strands or --in")


def _two_words(args) -> tuple[BraidWord, BraidWord]:
    if args.input:
        data = _read_json(args.input)
        w1, w2 = data["words"]
        return BraidWord.from_json(w1), BraidWord.from_json(w2)
    if args.word is None or args.other is None:
        raise BraidError("give --word and --other (with --strands) or --in")
    return _word_from_args(args), _word_from_args(args, args.other)


def _letters(text: Optional[str]) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise BraidError(f"cannot parse letters {text!r}") from exc


def _invariants(w: BraidWord) -> dict:
    e = exponent_sum(w)
    out = {"n": w.strands, "e": e, "beta": e - w.strands, "components": component_count(w)}
    if out["components"] > 1:
        out["beta_per_component"] = link_bennequin(w).to_json()
    return out


# ---------------------------------------------------------------- commands

def cmd_invariants(args) -> dict:
    return _invariants(_word_from_args(args))


def cmd_eq(args) -> dict:
    w1, w2 = _two_words(args)
    if w1.strands != w2.strands:
        return {"equal": False}
    return {"equal": equal_as_braids(w1, w2)}


def cmd_conj(args) -> dict:
    w1, w2 = _two_words(args)
    res = conjugate_closed(w1, w2, args.budget or default_budget("conj"))
    out = {"verdict": res.verdict.value,
           "witness": list(res.witness.letters) if res.witness is not None else None}
    if res.verdict is Verdict.BUDGET_EXHAUSTED:
        raise BudgetStop(out)
    return out


def cmd_move(args) -> dict:
    w = _word_from_args(args)
    kind, sign = args.kind, args.sign
    if kind == "destabilize":
        found = destabilize(w, sign, budget=args.budget or default_budget("move"))
        if found is None:
            raise BudgetStop({"error": "no destabilization found within budget"})
        out_word, t = found
        moves = [r.to_json() for r in t.records]
    else:
        if kind == "conjugate":
            r = record("conjugate", by=_letters(args.by))
        elif kind == "exchange":
            split = _letters(args.split) or None
            r = record("exchange", split=split) if split else record("exchange")
        elif kind == "flype":
            r = record("flype", sign)
        else:
            r = record(kind, sign)
        out_word = apply_move(w, r)
        moves = [r.to_json()]
    before, after = _invariants(w), _invariants(out_word)
    return {
        "word": out_word.to_json(),
        "moves": moves,
        "delta": {k: after[k] - before[k] for k in ("n", "e", "beta")},
    }


def cmd_replay(args) -> dict:
    t = Transcript.from_json(_read_json(args.input))
    end = replay(t.start, t.records)
    if end != t.end:
        raise MoveError("replay does not reach the stated end word")
    return {"valid": True, "end": end.to_json(), "ledger": total_beta_ledger(t)}


def cmd_cable(args) -> dict:
    spec = parse_spec(args.spec)
    w = iterated_word(spec)
    return {"spec": str(spec), "word": w.to_json(), "invariants": cable_invariants(spec).to_json()}


def cmd_verify_cable(args) -> dict:
    report = verify_spec(parse_spec(args.spec))
    out = report.to_json()
    if not report.ok:
        raise DomainStop(out)
    return out


def cmd_homfly(args) -> dict:
    w = _word_from_args(args)
    p = homfly(w, args.budget or default_budget("homfly"))
    return {"homfly": p.to_json(), "text": str(p), "mfw": mfw_bound(p)}


def cmd_mfw(args) -> dict:
    w = _word_from_args(args)
    p = homfly(w, args.budget or default_budget("homfly"))
    return {"mfw": mfw_bound(p), "strands": w.strands}


def cmd_reduce(args) -> dict:
    w = _word_from_args(args)
    res = reduce_word(w, args.budget or default_budget("reduce"))
    out = {"transcript": res.transcript.to_json(), "summary": res.summary()}
    if res.budget_exhausted:
        raise BudgetStop(out)
    return out


def cmd_reorder(args) -> dict:
    t = Transcript.from_json(_read_json(args.input))
    res = reorder_transcript(t, args.budget or default_budget("reorder"))
    out = {"ok": res.ok, "message": res.message, "transcript": res.transcript.to_json(),
           "split": split_point(res.transcript)}
    if not res.ok:
        raise BudgetStop(out)
    return out


def cmd_family(args) -> dict:
    R = parse_word(args.R, args.strands)
    S = parse_word(args.S, args.strands)
    words = family_generator(R, S, args.k)
    return {
        "words": [w.to_json() for w in words],
        "transcripts": [family_transcript(w).to_json() for w in words[:-1]],
    }


COMMANDS = {
    "invariants": cmd_invariants, "eq": cmd_eq, "conj": cmd_conj, "move": cmd_move,
    "replay": cmd_replay, "cable": cmd_cable, "verify-cable": cmd_verify_cable,
    "homfly": cmd_homfly, "mfw": cmd_mfw, "reduce": cmd_reduce, "reorder": cmd_reorder,
    "family": cmd_family,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidlab", description="Closed braid computations with JSON output.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized tie-breaking")
    common.add_argument("--budget", type=int, default=None, help="override the default budget")
    word = argparse.ArgumentParser(add_help=False)
    word.add_argument("--word", help='letters such as "1 -2 1"')
    word.add_argument("--strands", type=int)
    word.add_argument("--in", dest="input", help="JSON input file ('-' for stdin)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("invariants", "homfly", "mfw", "reduce"):
        sub.add_parser(name, parents=[common, word])
    for name in ("eq", "conj"):
        p = sub.add_parser(name, parents=[common, word])
        p.add_argument("--other", help="second word, same strand count")
    p = sub.add_parser("move", parents=[common, word])
    p.add_argument("--kind", required=True,
                   choices=["conjugate", "stabilize", "destabilize", "exchange", "flype"])
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--by", help="conjugating letters")
    p.add_argument("--split", help="positions of the two exchanged letters")
    for name in ("replay", "reorder"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--in", dest="input", required=True, help="transcript JSON ('-' for stdin)")
    for name in ("cable", "verify-cable"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--spec", required=True, help='e.g. "+(2,3);-(3,4)"')
    p = sub.add_parser("family", parents=[common])
    p.add_argument("--R", required=True)
    p.add_argument("--S", required=True)
    p.add_argument("--strands", type=int, required=True, help="strand count of R and S")
    p.add_argument("--k", type=int, default=2)
    return parser


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors are domain errors; exit status 2 is reserved for budgets
        return EXIT_OK if exc.code in (0, None) else EXIT_DOMAIN
    random.seed(args.seed)
    try:
        _emit(COMMANDS[args.command](args))
        return EXIT_OK
    except BudgetStop as stop:
        _emit(stop.payload)
        return EXIT_BUDGET
    except DomainStop as stop:
        _emit(stop.payload)
        return EXIT_DOMAIN
    except (HomflyBudgetExceeded, BudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (BraidError, CableError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
