"""Command-line front end.

Every command builds one JSON-ready object ``{command, inputs, result,
witnesses, stats}``; ``--json`` prints it, otherwise a short text rendering
of the same object is printed.  Exit codes: 0 pass, 1 fail verdict, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import morphisms as M
from . import search as S
from . import verify as V
from .words import (PowerThreshold, Word, circular_critical_exponent, critical_exponent,
                    exponent, is_circularly_power_free, is_power_free, parse_rational,
                    parse_word, render, shortest_period)

PASS, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _read_word(arg: str):
    """A word from the argument, ``@FILE`` (first line) or ``-`` (stdin)."""
    if arg == "-":
        text = sys.stdin.readline()
    elif arg.startswith("@"):
        try:
            lines = Path(arg[1:]).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}")
        text = lines[0] if lines else ""
    else:
        text = arg
    try:
        return parse_word(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def _nonempty(w: Word) -> None:
    if not len(w):
        raise UsageError("the word must be nonempty")


def _morphism(name: str) -> M.UniformMorphism:
    try:
        return M.load_morphism(name)
    except OSError as exc:
        raise UsageError(f"cannot read morphism {name}: {exc.strerror or exc}")
    except ValueError as exc:
        raise UsageError(str(exc))


def _payload(command, inputs, result, witnesses=(), stats=None) -> dict:
    return {"command": command, "inputs": inputs, "result": result,
            "witnesses": list(witnesses), "stats": stats or {}}


# -- commands -----------------------------------------------------------------


def cmd_exp(args):
    w, letters = _read_word(args.word)
    _nonempty(w)
    value = exponent(w)
    out = _payload("exp", {"word": args.word}, {"exponent": str(value),
                                                  "period": shortest_period(w)})
    return PASS, out, str(value)


def cmd_cexp(args):
    w, letters = _read_word(args.word)
    _nonempty(w)
    if args.max_len is not None and args.max_len < 1:
        raise UsageError("--max-len must be positive")
    if args.plain:
        value, wit = critical_exponent(w)
    else:
        value, wit = circular_critical_exponent(w, args.max_len)
    desc = wit.describe(letters)
    out = _payload("cexp", {"word": args.word, "plain": args.plain, "max_len": args.max_len},
                   {"exponent": str(value)}, [desc])
    return PASS, out, f"{value} witness={desc['factor']}"


def cmd_check(args):
    w, letters = _read_word(args.word)
    th = PowerThreshold(args.alpha, args.strict)
    verdict = is_circularly_power_free(w, th) if args.circular else is_power_free(w, th)
    wits = [] if verdict.witness is None else [verdict.witness.describe(letters)]
    out = _payload("check", {"word": args.word, "alpha": str(args.alpha),
                             "strict": args.strict, "circular": args.circular},
                   {"verdict": "pass" if verdict else "fail"}, wits)
    text = "pass" if verdict else f"fail witness={wits[0]['factor']} exponent={wits[0]['exponent']}"
    return (PASS if verdict else FAIL), out, text


def cmd_morphism(args):
    h = _morphism(args.name)
    inputs = {"action": args.action, "name": args.name}
    if args.action == "check":
        sync = M.is_synchronizing(h)
        ssm = M.is_strongly_synchronizing(h)
        builtin = M.BUILTINS.get(args.name.lower())
        result = {"q": h.q, "source_alphabet_size": h.source_alphabet_size,
                  "target_alphabet_size": h.target_alphabet_size,
                  "synchronizing": bool(sync), "strongly_synchronizing": bool(ssm),
                  "checksum": h.checksum(),
                  "checksum_ok": None if builtin is None else builtin.checksum() == h.checksum()}
        wits = [{"counterexample": ssm.counterexample}] if not ssm else []
        text = (f"q={h.q} synchronizing={'yes' if sync else 'no'} "
                f"strongly_synchronizing={'yes' if ssm else 'no'}")
        if wits:
            text += f" counterexample={ssm.counterexample}"
        return (PASS if ssm else FAIL), _payload("morphism", inputs, result, wits), text
    if args.action == "apply":
        if args.word is None:
            raise UsageError("morphism apply needs a word")
        w, _ = _read_word(args.word)
        if len(w) and max(w) >= h.source_alphabet_size:
            raise UsageError("word uses symbols outside the morphism's alphabet")
        image = M.apply(h, Word(list(w), h.source_alphabet_size)).text
        inputs["word"] = args.word
        return PASS, _payload("morphism", inputs, {"image": image}), image
    if args.length is None or args.length < 0:
        raise UsageError("morphism fixpoint needs --length N with N >= 0")
    try:
        prefix = M.fixed_point_prefix(h, args.seed, args.length).text
    except M.PreconditionError as exc:
        raise UsageError(str(exc))
    inputs.update(seed=args.seed, length=args.length)
    return PASS, _payload("morphism", inputs, {"prefix": prefix}), prefix


def cmd_factors(args):
    h = _morphism(args.name)
    if args.length < 1:
        raise UsageError("factor length must be positive")
    try:
        fs = M.factor_set(h, args.seed, args.length)
    except M.PreconditionError as exc:
        raise UsageError(str(exc))
    words = sorted(fs.members)
    out = _payload("factors", {"name": args.name, "length": args.length, "seed": args.seed},
                   {"count": len(words), "members": words},
                   stats={"closure_iterations": fs.iterations,
                          "witness_prefix_length": fs.prefix_length})
    return PASS, out, "\n".join(words)


def cmd_search(args):
    if args.k < 1 or args.max_len < 1 or (args.avoid_squares or 0) < 0:
        raise UsageError("--k and --max-len must be positive, --avoid-squares non-negative")
    cfg = S.SearchConfig(args.k, PowerThreshold(args.alpha, args.strict),
                         circular=args.circular, square_bound=args.avoid_squares or None,
                         max_length=args.max_len,
                         symmetry_reduction=not args.no_symmetry)
    progress = None
    if args.progress:
        def progress(seed, nodes, best):
            print(f"subtree {seed} done: nodes={nodes} best={best}", file=sys.stderr,
                  flush=True)
    try:
        res = S.longest_word(cfg, checkpoint=args.checkpoint, resume=args.resume,
                             threads=args.threads, progress=progress)
    except OSError as exc:
        raise UsageError(f"checkpoint: {exc.strerror or exc}")
    except ValueError as exc:
        raise UsageError(str(exc))
    report = res.to_dict()
    out = _payload("search", report["config"],
                   {k: report[k] for k in ("longest_length", "witness", "exhausted")},
                   [{"witness": res.witness.text}],
                   {"nodes_visited": res.nodes_visited, "wall_time_ms": report["wall_time_ms"]})
    text = (f"longest={res.longest_length} exhausted={'yes' if res.exhausted else 'no'} "
            f"nodes={res.nodes_visited} witness={res.witness.text}")
    return PASS, out, text


def cmd_pexp(args):
    w, letters = _read_word(args.word)
    _nonempty(w)
    if args.i < 1 or args.max_len < args.i:
        raise UsageError("need --i >= 1 and --max-len >= --i")
    value, parts = S.product_exponent(w, args.i, args.max_len)
    shown = [render(p, letters) for p in parts]
    out = _payload("pexp", {"word": args.word, "i": args.i, "max_len": args.max_len},
                   {"exponent": str(value)}, [{"factors": shown}])
    return PASS, out, f"{value} factors={'.'.join(shown)}"


def cmd_verify(args):
    claim = args.claim
    if claim == "all":
        reports = V.verify_all(skip_long=args.skip_long)
    elif claim in V.CLAIMS:
        reports = [V.CLAIMS[claim]()]
    else:
        raise UsageError(f"unknown claim {claim!r}; choose from all, {', '.join(V.CLAIMS)}")
    dicts = [r.to_dict() for r in reports]
    ok = all(r.passed for r in reports)
    out = _payload("verify", {"claim": claim, "skip_long": args.skip_long}, dicts,
                   [w for r in reports if not r.passed for w in r.witnesses],
                   {"claims": len(reports), "passed": sum(r.passed for r in reports)})
    text = "\n".join(f"{r.claim_id}: {r.verdict}" for r in reports)
    return (PASS if ok else FAIL), out, text


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON object")
    parser = _Parser(prog="circrep", description="Repetitions and circular repetitions in words.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    word_help = "word, @FILE or - for stdin"
    p = add("exp", cmd_exp, "exponent of a word")
    p.add_argument("word", help=word_help)

    p = add("cexp", cmd_cexp, "circular critical exponent")
    p.add_argument("word", help=word_help)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--plain", action="store_true", help="ordinary critical exponent instead")

    p = add("check", cmd_check, "test (circular) power-freeness")
    p.add_argument("word", help=word_help)
    p.add_argument("--alpha", type=_rational, required=True, help="threshold P/Q")
    p.add_argument("--strict", action="store_true", help="forbid only exponents above alpha")
    p.add_argument("--circular", action="store_true")

    p = add("morphism", cmd_morphism, "inspect a uniform morphism")
    p.add_argument("action", choices=["check", "apply", "fixpoint"])
    p.add_argument("name", help="mu, psi, thue-morse or a morphism file")
    p.add_argument("word", nargs="?", help="word to map (apply)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=int, default=None)

    p = add("factors", cmd_factors, "exact factor set of a fixed point")
    p.add_argument("name")
    p.add_argument("length", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = add("search", cmd_search, "longest word avoiding a repetition threshold")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--circular", action="store_true")
    p.add_argument("--avoid-squares", type=int, default=None, metavar="C",
                   help="also forbid squares xx with |xx| < C")
    p.add_argument("--max-len", type=int, default=1000)
    p.add_argument("--checkpoint", default=None, metavar="FILE")
    p.add_argument("--resume", default=None, metavar="FILE")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default ${S.THREADS_ENV} or 1)")
    p.add_argument("--no-symmetry", action="store_true", help="search all first letters")
    p.add_argument("--progress", action="store_true", help="report finished subtrees on stderr")

    p = add("pexp", cmd_pexp, "largest exponent of a product of i factors")
    p.add_argument("word", help=word_help)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)

    p = add("verify", cmd_verify, "re-run the computer checks")
    p.add_argument("claim", nargs="?", default="all")
    p.add_argument("--skip-long", action="store_true", help="leave out the exhaustive searches")
    return parser


def run(argv=None) -> tuple:
    """``(exit_code, output_text)`` for one command line."""
    try:
        args = build_parser().parse_args(argv)
        code, payload, text = args.fn(args)
    except UsageError as exc:
        return USAGE, f"error: {exc}"
    if args.json:
        text = json.dumps(payload, indent=2)
    return code, text


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    stream = sys.stderr if code == USAGE else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
