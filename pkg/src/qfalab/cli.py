"""Command-line interface.

Search outcomes (witness found, or search range exhausted) are data, not
failures: those commands exit 0 either way.  Nonzero exit codes mean real
errors: unreadable files, malformed documents, invalid machines where a
valid one is required, unknown tokens, bad parameters.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .constructions import (
    below_cutpoint_moqfa,
    constant_moqfa,
    embed_moqfa_to_mmqfa,
    empty_strict_mmqfa,
    full_nonstrict_mmqfa,
)
from .errors import AlphabetError, InputError, ParameterError, QfaError
from .language import (
    CutpointQuery,
    SearchReport,
    bounded_containment,
    bounded_equivalence,
    bounded_universality,
    bounded_witness_search,
)
from .machines import MMQFA, MOQFA, Alphabet, Machine, validate
from .semantics import Word, accept_prob, mmqfa_run
from .serialize import parse_automaton, serialize_automaton

BOUNDED_NOTE = (
    "bounded search only: exhausting all words up to the length limit "
    "decides nothing about longer words"
)

_WITNESS_LABEL = {
    "emptiness": "witness",
    "universality": "counterexample",
    "equivalence": "separating word",
    "containment": "left-only member",
}


def format_word(word: Word) -> str:
    return "ε" if not word else ",".join(word)


def parse_word_text(text: str, alphabet: Alphabet) -> Word:
    """Decode a CLI word: comma-separated tokens, or a bare string when
    every alphabet token is a single character.  Empty text is the empty
    word."""
    if text == "":
        return ()
    if "," in text:
        tokens = text.split(",")
        if any(tok == "" for tok in tokens):
            raise AlphabetError(f"word {text!r} contains an empty token")
        return tuple(tokens)
    if all(len(tok) == 1 for tok in alphabet.tokens):
        return tuple(text)
    return (text,)


def _load(path: str, tol: float, *, check: bool = True) -> Machine:
    text = Path(path).read_text(encoding="utf-8")
    return parse_automaton(text, tol, check=check)


def _write(path: str, machine: Machine) -> None:
    Path(path).write_text(serialize_automaton(machine), encoding="utf-8")


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_validate(args) -> int:
    machine = _load(args.file, args.tolerance, check=False)
    violations = validate(machine, args.tolerance)
    if args.fmt == "json":
        _emit_json(
            {
                "valid": not violations,
                "violations": [
                    {
                        "field": v.field,
                        "index": v.index,
                        "deviation": v.deviation if math.isfinite(v.deviation) else None,
                        "message": v.message,
                    }
                    for v in violations
                ],
            }
        )
    elif violations:
        print(f"invalid: {len(violations)} violation(s)")
        for v in violations:
            print(f"  - {v.message}")
    else:
        print("valid")
    return 0


def _trace_payload(trace) -> dict:
    return {
        "steps": [
            {
                "symbol": s.symbol,
                "accept_increment": s.accept_increment,
                "reject_increment": s.reject_increment,
                "go_norm_sq": s.go_norm_sq,
            }
            for s in trace.steps
        ],
        "total_accept": trace.total_accept,
        "total_reject": trace.total_reject,
        "residual_go": trace.residual_go,
    }


def cmd_run(args) -> int:
    machine = _load(args.file, args.tolerance)
    word = parse_word_text(args.word, machine.alphabet)
    if args.trace and not isinstance(machine, MMQFA):
        raise InputError("--trace requires an mmqfa document")
    probability = accept_prob(machine, word)
    if args.fmt == "json":
        payload = {"word": list(word), "probability": probability}
        if args.trace:
            payload["trace"] = _trace_payload(mmqfa_run(machine, word))
        _emit_json(payload)
        return 0
    if args.trace:
        trace = mmqfa_run(machine, word)
        print(f"{'step':>4}  {'symbol':<10} {'accept':<14} {'reject':<14} go")
        for i, s in enumerate(trace.steps):
            print(
                f"{i:>4}  {s.symbol:<10} {s.accept_increment:<14.12g} "
                f"{s.reject_increment:<14.12g} {s.go_norm_sq:.12g}"
            )
        print(
            f"totals: accept {trace.total_accept:.12g}  reject {trace.total_reject:.12g}  "
            f"residual go {trace.residual_go:.12g}"
        )
    print(f"probability {probability:.12g}")
    return 0


def cmd_embed(args) -> int:
    machine = _load(args.file, args.tolerance)
    if not isinstance(machine, MOQFA):
        raise InputError("embed expects a measure-once (moqfa) document")
    embedded = embed_moqfa_to_mmqfa(machine, args.tolerance)
    _write(args.output, embedded)
    if args.fmt == "json":
        _emit_json(
            {"states_in": machine.dim, "states_out": embedded.dim, "output": args.output}
        )
    else:
        print(
            f"embedded {machine.dim}-state moqfa into {embedded.dim}-state mmqfa "
            f"-> {args.output}"
        )
    return 0


def cmd_gadget(args) -> int:
    alphabet = Alphabet(tuple(args.alphabet.split(",")))
    needs_drop = args.which in ("below", "empty-strict")
    if needs_drop and args.c is None:
        raise ParameterError(f"gadget '{args.which}' requires --c")
    if not needs_drop and args.c is not None:
        raise ParameterError(f"gadget '{args.which}' does not take --c")
    if args.which == "constant":
        machine: Machine = constant_moqfa(alphabet, args.lam)
    elif args.which == "below":
        machine = below_cutpoint_moqfa(alphabet, args.lam, args.c)
    elif args.which == "empty-strict":
        machine = empty_strict_mmqfa(alphabet, args.lam, args.c)
    else:
        machine = full_nonstrict_mmqfa(alphabet, args.lam)
    _write(args.output, machine)
    kind = "moqfa" if isinstance(machine, MOQFA) else "mmqfa"
    if args.fmt == "json":
        _emit_json(
            {"gadget": args.which, "kind": kind, "states": machine.dim, "output": args.output}
        )
    else:
        print(f"wrote {args.which} gadget ({kind}, {machine.dim} states) -> {args.output}")
    return 0


def _report_payload(report: SearchReport, problem: str, query: CutpointQuery) -> dict:
    payload = {
        "problem": problem,
        "mode": query.mode,
        "cutpoint": query.cutpoint,
        "epsilon": query.epsilon,
        "max_len": report.max_len,
        "outcome": report.outcome,
        "witness": list(report.witness) if report.witness is not None else None,
        "verdicts": [
            {"side": v.side.value, "probability": v.probability, "margin": v.margin}
            for v in report.verdicts
        ],
        "words_checked": report.words_checked,
        "boundary_words": [list(w) for w in report.boundary_words],
    }
    if problem == "containment":
        payload["proper_containment_found"] = report.proper_containment_found
        payload["proper_witness"] = (
            list(report.proper_witness) if report.proper_witness is not None else None
        )
    if report.outcome == "exhausted":
        payload["note"] = BOUNDED_NOTE
    return payload


def _print_report(report: SearchReport, problem: str, query: CutpointQuery, fmt: str) -> int:
    if fmt == "json":
        _emit_json(_report_payload(report, problem, query))
        return 0
    label = _WITNESS_LABEL[problem]
    if report.found:
        sides = "; ".join(
            f"probability {v.probability:.12g}, margin {v.margin:+.3e}, {v.side.value}"
            for v in report.verdicts
        )
        print(f"{label} found: {format_word(report.witness)}  ({sides})")
        print(f"checked {report.words_checked} word(s) up to length {report.max_len}")
    else:
        print(
            f"exhausted: no {label} among {report.words_checked} words "
            f"of length <= {report.max_len}"
        )
        print(f"note: {BOUNDED_NOTE}")
    if report.boundary_words:
        shown = "; ".join(format_word(w) for w in report.boundary_words[:10])
        more = len(report.boundary_words) - 10
        suffix = f" (+{more} more)" if more > 0 else ""
        print(f"boundary words (within epsilon of the cutpoint): {shown}{suffix}")
    if problem == "containment":
        if report.proper_containment_found:
            print(
                f"proper-containment witness (right-only member): "
                f"{format_word(report.proper_witness)}"
            )
        else:
            print("proper-containment witness (right-only member): none found")
    return 0


def _query(args) -> CutpointQuery:
    return CutpointQuery(args.cutpoint, args.mode, args.tolerance)


def cmd_empty(args) -> int:
    machine = _load(args.file, args.tolerance)
    report = bounded_witness_search(machine, _query(args), args.max_len)
    return _print_report(report, "emptiness", _query(args), args.fmt)


def cmd_universal(args) -> int:
    machine = _load(args.file, args.tolerance)
    report = bounded_universality(machine, _query(args), args.max_len)
    return _print_report(report, "universality", _query(args), args.fmt)


def cmd_equiv(args) -> int:
    a = _load(args.file1, args.tolerance)
    b = _load(args.file2, args.tolerance)
    report = bounded_equivalence(a, b, _query(args), args.max_len)
    return _print_report(report, "equivalence", _query(args), args.fmt)


def cmd_contain(args) -> int:
    a = _load(args.file1, args.tolerance)
    b = _load(args.file2, args.tolerance)
    report = bounded_containment(a, b, _query(args), args.max_len)
    return _print_report(report, "containment", _query(args), args.fmt)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tolerance",
        type=float,
        default=1e-9,
        help="validation and cutpoint-comparison tolerance (default 1e-9)",
    )
    common.add_argument(
        "--format",
        dest="fmt",
        choices=("text", "json"),
        default="text",
        help="output format (default text)",
    )

    def add_query(p):
        p.add_argument("--cutpoint", required=True, help="cutpoint in (0, 1]: '3/4' or '0.75'")
        p.add_argument("--mode", required=True, choices=("strict", "nonstrict"))
        p.add_argument("--max-len", type=int, required=True, help="search words up to this length")

    parser = argparse.ArgumentParser(
        prog="qfalab",
        description=(
            "Simulate probabilistic and quantum finite automata and explore their "
            "cutpoint languages with bounded searches."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a machine document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", parents=[common], help="evaluate a word's acceptance probability")
    p.add_argument("file")
    p.add_argument(
        "--word",
        required=True,
        help="comma-separated tokens, or a bare string when all tokens are single "
        "characters; '' is the empty word",
    )
    p.add_argument("--trace", action="store_true", help="print the stepwise mmqfa trace")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser(
        "embed", parents=[common], help="rebuild a moqfa as an mmqfa with the same word function"
    )
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("gadget", parents=[common], help="write a gadget machine document")
    p.add_argument(
        "which", choices=("constant", "below", "empty-strict", "full-nonstrict")
    )
    p.add_argument("--alphabet", required=True, help="comma-separated tokens, e.g. a,b")
    p.add_argument("--lambda", dest="lam", required=True, help="probability level: '1/2' or '0.5'")
    p.add_argument("--c", help="drop below the level (below / empty-strict gadgets)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser(
        "empty", parents=[common], help="bounded search for a cutpoint-language member"
    )
    p.add_argument("file")
    add_query(p)
    p.set_defaults(func=cmd_empty)

    p = sub.add_parser(
        "universal", parents=[common], help="bounded search for a non-member (counterexample)"
    )
    p.add_argument("file")
    add_query(p)
    p.set_defaults(func=cmd_universal)

    p = sub.add_parser(
        "equiv", parents=[common], help="bounded search for a separating word"
    )
    p.add_argument("file1")
    p.add_argument("file2")
    add_query(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser(
        "contain", parents=[common], help="bounded search for a containment violation"
    )
    p.add_argument("file1")
    p.add_argument("file2")
    add_query(p)
    p.set_defaults(func=cmd_contain)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QfaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
