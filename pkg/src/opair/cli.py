"""``opair`` command line: analyze, verify, sweep, difftable.

Exit codes: 0 every hard check passed, 1 a hard check failed, 2 bad usage or
input, 3 internal error.  Verdicts never change the exit code.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from collections import Counter
from fractions import Fraction

from . import analysis, diffop
from .errors import OpairError, PropertyViolation
from .isotopic import MatrixPair
from .exact import Mat
from .rng import DEFAULT_RANGE, substream

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_entry(x) -> Fraction:
    """An integer, or a string "p" or "p/q" in lowest terms with q > 0."""
    if isinstance(x, bool):
        raise UsageError(f"boolean entry {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.fullmatch(x):
        num, _, den = x.partition("/")
        if den and int(den) == 0:
            raise UsageError(f"zero denominator in {x!r}")
        value = Fraction(x)
        if den and (value.numerator, value.denominator) != (int(num), int(den)):
            raise UsageError(f"{x!r} is not in lowest terms")
        return value
    raise UsageError(f"entry {x!r} is neither an integer nor a 'p/q' string")


def parse_pair_document(doc) -> MatrixPair:
    if not isinstance(doc, dict) or not {"A", "B"} <= doc.keys():
        raise UsageError("pair document needs keys 'A' and 'B'")
    mats = []
    for key in ("A", "B"):
        rows = doc[key]
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise UsageError(f"{key} must be a non-empty list of rows")
        if any(len(r) != len(rows) for r in rows):
            raise UsageError(f"{key} must be square")
        mats.append(Mat([[parse_entry(x) for x in r] for r in rows]))
    A, B = mats
    if A.n != B.n:
        raise UsageError("A and B differ in size")
    if "n" in doc and doc["n"] != A.n:
        raise UsageError(f"declared n = {doc['n']!r} but matrices are {A.n}x{A.n}")
    return MatrixPair(A, B)


def load_pair(path: str) -> MatrixPair:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return parse_pair_document(doc)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def dumps_line(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None


def resolve_seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("OPAIR_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"OPAIR_SEED={env!r} is not an integer") from None


def parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad --n list {text!r}") from None
    if not ns or any(n < 1 for n in ns):
        raise UsageError("--n needs positive sizes")
    return ns


def cmd_analyze(args) -> int:
    pair = load_pair(args.pair)
    report = analysis.analyze_pair(pair, seed=resolve_seed(args.seed))
    emit(dumps(report), args.out)
    return EXIT_OK if analysis.analysis_passed(report) else EXIT_VIOLATION


def cmd_verify(args) -> int:
    names = list(analysis.SUITES) if args.suite == "all" else [args.suite]
    if any(s not in analysis.SUITES for s in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(analysis.SUITES)}")
    ns = parse_n_list(args.n)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    seed = resolve_seed(args.seed)
    suites = {name: analysis.run_suite(name, ns, args.samples, seed) for name in names}
    passed = all(s["passed"] for s in suites.values())
    doc = {
        "schema": analysis.SCHEMA,
        "command": "verify",
        "n": ns,
        "samples": args.samples,
        "seed": seed,
        "passed": passed,
        "summary": {k: {"passed": v["passed"], "checked": v["checked"], "failures": v["failures"]} for k, v in suites.items()},
        "suites": suites,
    }
    emit(dumps(doc), args.out)
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_sweep(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    if args.n < 1 or args.range < 1:
        raise UsageError("--n and --range must be positive")
    seed = resolve_seed(args.seed)
    lines = []
    census: Counter = Counter()
    failing = 0
    for idx in range(args.count):
        g = substream(seed, idx)
        pair = MatrixPair(g.matrix(args.n, args.range), g.matrix(args.n, args.range))
        rep = analysis.analyze_pair(pair, seed=seed)
        failing += not analysis.analysis_passed(rep)
        census[(rep["a"], rep["a0"], rep["classification"])] += 1
        lines.append(dumps_line({"index": idx, "seed": seed, **rep}))
    summary = {
        "schema": analysis.SCHEMA,
        "summary": True,
        "n": args.n,
        "count": args.count,
        "seed": seed,
        "range": args.range,
        "records_with_failed_checks": failing,
        "distribution": [
            {"a": a, "a0": a0, "classification": c, "count": k} for (a, a0, c), k in sorted(census.items())
        ],
    }
    lines.append(dumps_line(summary))
    emit("".join(lines), args.out)
    return EXIT_OK if failing == 0 else EXIT_VIOLATION


def cmd_difftable(args) -> int:
    if args.max < 0:
        raise UsageError("--max must be non-negative")
    if args.degree < 2 * args.max + 2:
        raise UsageError(f"--degree {args.degree} too small; need at least {2 * args.max + 2}")
    table = diffop.commutation_table(args.max, args.degree)
    emit(dumps({"schema": analysis.SCHEMA, "command": "difftable", **table.to_json()}), args.out)
    return EXIT_OK if table.report.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opair", description="Exact checks for isotopic pairs of matrices and their Lie hybrids.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="full report for one pair")
    a.add_argument("--pair", required=True, help="JSON file with A, B (and optionally n)")
    a.add_argument("--out")
    a.add_argument("--seed", type=int, help="seed for sampled checks (default: $OPAIR_SEED or 0)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", help=f"all or one of: {', '.join(analysis.SUITES)}")
    v.add_argument("--n", default="2,3", help="comma-separated matrix sizes")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="census of random pairs as JSON Lines")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int)
    s.add_argument("--range", type=int, default=DEFAULT_RANGE, help="entries uniform in [-R, R]")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    d = sub.add_parser("difftable", help="commutation table of the polynomial-operator hybrid")
    d.add_argument("--max", type=int, default=6)
    d.add_argument("--degree", type=int, default=14)
    d.add_argument("--out")
    d.set_defaults(func=cmd_difftable)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"opair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PropertyViolation as exc:
        print(f"opair: violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OpairError as exc:
        print(f"opair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"opair: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
