"""Command-line interface.

Every command produces an envelope ``{status, payload, diagnostics}``; the
status maps to the exit code (ok 0, error 1, inconclusive 2).  ``--json``
prints the envelope with sorted keys, otherwise a plain-text rendering.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import diophantine, search, sequences
from .errors import BudgetExceeded, LimitExceeded, ParikhError, SearchSpaceTooLarge
from .matrix import count_subword, m_equivalent, parikh_matrix
from .words import OrderedAlphabet, Word

EXIT_CODES = {"ok": 0, "error": 1, "inconclusive": 2}


@dataclass
class Envelope:
    status: str
    payload: object = None
    diagnostics: list[str] = field(default_factory=list)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        body = {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}
        return json.dumps(body, sort_keys=True, indent=2)


class _Inconclusive(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _alphabet(args, *texts) -> OrderedAlphabet:
    if args.alphabet:
        return OrderedAlphabet(args.alphabet)
    return OrderedAlphabet.from_text("".join(texts) or "a")


def _word(args, text, *others) -> Word:
    return Word(_alphabet(args, text, *others), text)


def _period_dict(found):
    if found is None:
        return None
    return {"preperiod": found[0], "period": found[1]}


def _period_text(found):
    if found is None:
        return "eventual period: inconclusive"
    return f"preperiod {found[0]}, period {found[1]}"


# -- commands ----------------------------------------------------------------

def cmd_matrix(args):
    w = _word(args, args.word)
    m = parikh_matrix(w)
    payload = {
        "alphabet": w.alphabet.letters,
        "word": w.text,
        "matrix": [[str(x) for x in row] for row in m.entries],
    }
    return payload, m.format_grid()


def cmd_count(args):
    w = _word(args, args.word, args.pattern)
    v = Word(w.alphabet, args.pattern)
    n = count_subword(w, v)
    return {"word": w.text, "pattern": v.text, "count": str(n)}, str(n)


def cmd_equiv(args):
    w1 = _word(args, args.word, args.other)
    w2 = Word(w1.alphabet, args.other)
    eq = m_equivalent(w1, w2)
    return {"word": w1.text, "other": w2.text, "equivalent": eq}, "true" if eq else "false"


def cmd_ambiguous(args):
    w = _word(args, args.word)
    try:
        if args.engine == "search":
            v = search.is_ambiguous(w, args.budget)
        else:
            v = diophantine.decide(w, args.remove)
    except (BudgetExceeded, SearchSpaceTooLarge) as exc:
        raise _Inconclusive(str(exc), {"word": w.text, "verdict": None, "engine": args.engine})
    payload = {
        "word": w.text,
        "verdict": v.verdict,
        "witness": v.witness.text if v.witness else None,
        "explored": v.explored,
        "engine": args.engine,
    }
    text = v.verdict if v.witness is None else f"{v.verdict} (witness {v.witness.text})"
    return payload, text


def cmd_class(args):
    w = _word(args, args.word)
    try:
        members = search.enumerate_class(w, args.limit, args.budget)
    except (LimitExceeded, BudgetExceeded) as exc:
        raise _Inconclusive(str(exc), {"word": w.text, "members": None})
    texts = [m.text for m in members]
    return {"word": w.text, "members": texts, "size": len(texts)}, "\n".join(texts)


def cmd_candidates(args):
    w = _word(args, args.word)
    gamma = [a for a in w.alphabet.letters if a != args.remove]
    cands = [u.text for u in diophantine.consistent_projections(w, gamma)]
    payload = {"word": w.text, "removed": args.remove, "candidates": cands, "count": len(cands)}
    return payload, "\n".join(cands)


def _template(args):
    alphabet = OrderedAlphabet(args.alphabet) if args.alphabet else None
    return diophantine.parse_template(args.template, alphabet)


def cmd_system(args):
    t = _template(args)
    s = diophantine.build_system(t, args.candidate, args.remove)
    payload = {
        "template": args.template,
        "candidate": args.candidate,
        "removed": args.remove,
        "system": s.to_dict(),
    }
    return payload, s.pretty()


def cmd_scan(args):
    t = _template(args)
    if args.engine == "diophantine":
        feasible = diophantine.ambiguous_parameters(t, args.remove, args.kmax, args.cap)
    else:
        feasible = set()
        for k in range(1, args.kmax + 1):
            try:
                if search.is_ambiguous(diophantine.instantiate(t, k), args.budget).ambiguous:
                    feasible.add(k)
            except BudgetExceeded as exc:
                raise _Inconclusive(f"k={k}: {exc}")
    theta = ["A" if k in feasible else "U" for k in range(1, args.kmax + 1)]
    residue = diophantine.detect_residue_structure(feasible, args.kmax)
    period = sequences.detect_eventual_period(theta)
    payload = {
        "template": args.template,
        "removed": args.remove,
        "kmax": args.kmax,
        "engine": args.engine,
        "feasible": sorted(feasible),
        "theta": theta,
        "residue": residue.to_dict(),
        "eventual_period": _period_dict(period),
    }
    res = (
        "eventually infeasible"
        if residue.eventually_infeasible
        else f"k = t mod {residue.modulus}, t in {sorted(residue.residues)}"
    )
    text = "\n".join([
        "feasible k = {" + ", ".join(map(str, sorted(feasible))) + "}",
        "theta = " + ",".join(theta),
        f"residue structure: from k >= {residue.threshold}, {res} ({residue.confidence})",
        _period_text(period),
    ])
    return payload, text


def _load_schedule(spec: str) -> dict:
    path = Path(spec)
    if not spec.lstrip().startswith("{") and path.exists():
        return json.loads(path.read_text())
    return json.loads(spec)


def _sequence_report(words, args, removed=None):
    theta = sequences.ambiguity_sequence(
        words, args.engine, removed=removed, budget=args.budget
    )
    period = sequences.detect_eventual_period(theta)
    payload = {
        "words": [w.text for w in words],
        "theta": list(theta.terms),
        "engine": args.engine,
        "eventual_period": _period_dict(period),
    }
    text = "\n".join([*(w.text for w in words), "theta = " + str(theta), _period_text(period)])
    diagnostics = []
    if sequences.INCONCLUSIVE in theta.terms:
        diagnostics.append("some terms are inconclusive (engine cap reached)")
    return payload, text, diagnostics


def cmd_sequence(args):
    data = _load_schedule(args.schedule)
    if args.alphabet:
        data = {**data, "alphabet": args.alphabet}
    sched = sequences.DuplicationSchedule.from_dict(data)
    if args.terms is not None:
        sched = sequences.DuplicationSchedule(sched.base, sched.increments, args.terms)
    words = sequences.generate_words(sched)
    payload, text, diagnostics = _sequence_report(words, args, removed=sched.letter)
    payload["exponents"] = sched.exponents()
    if diagnostics:
        raise _Inconclusive(diagnostics[0], payload)
    return payload, text


def cmd_realize(args):
    words = sequences.realize_pattern(args.pattern)
    if not args.verify:
        return {"pattern": args.pattern, "words": [w.text for w in words]}, "\n".join(
            w.text for w in words
        )
    payload, text, diagnostics = _sequence_report(words, args, removed="c")
    payload["pattern"] = args.pattern
    if diagnostics:
        raise _Inconclusive(diagnostics[0], payload)
    return payload, text


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--alphabet", help="ordered letters, e.g. abcd (default: sorted letters of the input)")
    common.add_argument("--json", action="store_true", help="print the JSON envelope")

    parser = _Parser(prog="parikhseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("matrix", cmd_matrix, "Parikh matrix of a word")
    p.add_argument("--word", required=True)

    p = add("count", cmd_count, "occurrences of a scattered subword")
    p.add_argument("--word", required=True)
    p.add_argument("--pattern", required=True)

    p = add("equiv", cmd_equiv, "test M-equivalence of two words")
    p.add_argument("--word", required=True)
    p.add_argument("--other", required=True)

    p = add("ambiguous", cmd_ambiguous, "decide M-ambiguity of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--engine", choices=sequences.ENGINES, default="search")
    p.add_argument("--budget", type=int, help="search node budget (search engine)")
    p.add_argument("--remove", help="letter to eliminate (diophantine engine)")

    p = add("class", cmd_class, "list the M-equivalence class of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--limit", type=int, default=10000)
    p.add_argument("--budget", type=int)

    p = add("candidates", cmd_candidates, "projections compatible with M-equivalence")
    p.add_argument("--word", required=True)
    p.add_argument("--remove", required=True, help="the letter left out of the projection")

    p = add("system", cmd_system, "linear system for a template and a candidate projection")
    p.add_argument("--template", required=True)
    p.add_argument("--candidate", required=True)
    p.add_argument("--remove", required=True)

    p = add("scan", cmd_scan, "ambiguous parameters of a template and their eventual period")
    p.add_argument("--template", required=True)
    p.add_argument("--remove", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--engine", choices=sequences.ENGINES, default="diophantine")
    p.add_argument("--budget", type=int)
    p.add_argument("--cap", type=int, default=diophantine.DEFAULT_CAP)

    p = add("sequence", cmd_sequence, "M-ambiguity sequence of a duplication schedule")
    p.add_argument("--schedule", required=True, help="schedule JSON (file path or inline)")
    p.add_argument("--terms", type=int, help="override the number of words")
    p.add_argument("--engine", choices=sequences.ENGINES, default="search")
    p.add_argument("--budget", type=int)

    p = add("realize", cmd_realize, "duplication chain realizing an A/U pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--verify", action="store_true", help="recompute the sequence")
    p.add_argument("--engine", choices=sequences.ENGINES, default="search")
    p.add_argument("--budget", type=int)

    return parser


def run(argv: list[str]) -> tuple[Envelope, bool]:
    """Execute a command; returns the envelope and whether JSON was requested."""
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        as_json = args.json
        payload, text = args.func(args)
        return Envelope("ok", payload, text=text), as_json
    except _Inconclusive as exc:
        return Envelope("inconclusive", exc.payload, [str(exc)], text=f"inconclusive: {exc}"), as_json
    except (_UsageError, ParikhError, ValueError, KeyError, OSError) as exc:
        message = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        return Envelope("error", None, [message], text=f"error: {message}"), as_json


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(argv)
    env, as_json = run(argv)
    stream = sys.stdout if env.status != "error" or as_json else sys.stderr
    print(env.to_json() if as_json else env.text, file=stream)
    return env.exit_code


if __name__ == "__main__":
    sys.exit(main())
