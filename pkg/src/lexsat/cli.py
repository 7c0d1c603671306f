"""Command-line interface.

Exit codes: 0 success, 1 unsatisfiable (solve / oracle), 2 usage or parse
error, 3 dispatch refused or reduction failed.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from lexsat.bench import sweep, to_csv
from lexsat.classifier import PROPERTIES, dispatch_verdict
from lexsat.errors import (
    ContractViolation,
    DispatchError,
    ParseError,
    ReductionError,
    ResourceLimitError,
)
from lexsat.generate import GenSpec, generate
from lexsat.instance import parse_instance, serialize_instance
from lexsat.presets import PRESETS
from lexsat.reductions import Budget, append_parity_gadget, remove_constants
from lexsat.solvers import brute_force_lex_opt, dispatch, odd_opt

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from exc


def _direction(args: argparse.Namespace) -> str:
    return "max" if args.max else "min"


def _add_direction(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--min", action="store_true", help="lexicographically minimal (default)")
    group.add_argument("--max", action="store_true", help="lexicographically maximal")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexsat", description="Lexicographically optimal models of S-formulae."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print taxonomy flags and dispatch verdicts")
    p.add_argument("file")

    p = sub.add_parser("solve", help="lex-min / lex-max model via dispatch")
    p.add_argument("file")
    _add_direction(p)
    p.add_argument("--no-fallback", action="store_true", help="refuse exponential backtracking")
    p.add_argument("--stats", action="store_true", help="print method and call count to stderr")

    p = sub.add_parser("odd", help="is the last variable 1 in the optimal model?")
    p.add_argument("file")
    _add_direction(p)

    p = sub.add_parser("oracle", help="brute-force optimum (same output as solve)")
    p.add_argument("file")
    _add_direction(p)

    p = sub.add_parser("reduce", help="apply a reduction and print the new instance")
    p.add_argument("kind", choices=["remove-constants", "parity"])
    p.add_argument("file")
    p.add_argument("--max-clauses", type=int, default=Budget.max_clauses)
    p.add_argument("--max-aux", type=int, default=Budget.max_aux)

    p = sub.add_parser("gen", help="print a random instance")
    p.add_argument("--preset", choices=sorted(PRESETS), default="impl")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--const-prob", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--planted", action="store_true", help="only keep clauses a hidden model satisfies")

    p = sub.add_parser("bench", help="run a generated sweep and print CSV")
    p.add_argument("--preset", action="append", choices=sorted(PRESETS), dest="presets")
    p.add_argument("-n", type=_int_list, default=[100, 1000], help="comma-separated sizes")
    p.add_argument("--density", type=float, default=5.0, help="clauses per variable")
    p.add_argument("--seeds", type=int, default=1, help="instances per (preset, n)")
    p.add_argument("--const-prob", type=float, default=0.0)
    p.add_argument("--planted", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-fallback", action="store_true")
    _add_direction(p)
    return parser


def _classify(args) -> int:
    rel_set, _ = parse_instance(_read(args.file))
    tax = rel_set.taxonomy
    for prop in PROPERTIES:
        print(f"{prop}={str(getattr(tax, prop)).lower()}")
    for direction in ("min", "max"):
        verdict = dispatch_verdict(rel_set, True, direction)
        print(f"{direction}_with_constants={'poly' if verdict.with_constants_poly else 'hard'}")
        print(f"{direction}_without_constants={'poly' if verdict.without_constants_poly else 'hard'}")
    return EXIT_OK


def _solve(args) -> int:
    _, formula = parse_instance(_read(args.file))
    result = dispatch(formula, direction=_direction(args), fallback=not args.no_fallback)
    print(result)
    if args.stats:
        print(
            f"method={result.method} decision_calls={result.stats.decision_calls} "
            f"millis={result.stats.elapsed * 1000:.3f}",
            file=sys.stderr,
        )
    return EXIT_OK if result.sat else EXIT_UNSAT


def _odd(args) -> int:
    _, formula = parse_instance(_read(args.file))
    print(str(odd_opt(formula, _direction(args))).lower())
    return EXIT_OK


def _oracle(args) -> int:
    _, formula = parse_instance(_read(args.file))
    result = brute_force_lex_opt(formula, _direction(args))
    print(result)
    return EXIT_OK if result.sat else EXIT_UNSAT


def _reduce(args) -> int:
    _, formula = parse_instance(_read(args.file))
    budget = Budget(args.max_clauses, args.max_aux)
    if args.kind == "remove-constants":
        out = remove_constants(formula, budget=budget)
    else:
        out = append_parity_gadget(formula, budget=budget)
    comments = [f"case: {out.case_tag}"]
    if out.guard:
        comments.append("guard: " + " ".join(f"{v}={b}" for v, b in out.guard.items()))
    text = serialize_instance(out.formula, comments)
    sys.stdout.write(text)
    print("# kept: " + " ".join(out.kept))
    return EXIT_OK


def _gen(args) -> int:
    spec = GenSpec(args.preset, args.n, args.m, args.const_prob, args.seed, args.planted)
    sys.stdout.write(serialize_instance(generate(spec)))
    return EXIT_OK


def _bench(args) -> int:
    presets = args.presets or ["horn", "two_cnf", "affine"]
    specs = [
        GenSpec(name, n, max(1, round(args.density * n)), args.const_prob, seed, args.planted)
        for name in presets
        for n in args.n
        for seed in range(args.seeds)
    ]
    rows = sweep(specs, _direction(args), not args.no_fallback, args.jobs)
    sys.stdout.write(to_csv(rows))
    return EXIT_OK


_COMMANDS = {
    "classify": _classify,
    "solve": _solve,
    "odd": _odd,
    "oracle": _oracle,
    "reduce": _reduce,
    "gen": _gen,
    "bench": _bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (_Usage, ParseError, ContractViolation) as exc:
        print(f"lexsat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DispatchError, ReductionError, ResourceLimitError) as exc:
        print(f"lexsat: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
