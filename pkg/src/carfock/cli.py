"""Command-line interface.

Subcommands: check-car, sweep, demo-paper, validate-ssr, trace, entropy.
Exit codes: 0 success, 2 parse/width/input errors, 3 superselection abort,
4 check or walkthrough failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import annihilate, anticommutator, create
from .demo import format_transcript, run_demo
from .errors import CarFockError, DemoFailure, SizeError, SsrError
from .grammar import parse_state
from .reduce import (
    TraceConvention,
    density_matrix,
    partial_trace,
    von_neumann_entropy,
)
from .report import (
    CONVENTION_NAMES,
    SCHEMA,
    fermionic_invariance_holds,
    matrix_json,
    render_report,
    run_sweep,
    verdict_json,
)
from .ssr import validate_ket

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SSR = 3
EXIT_CHECK = 4


def _read_state_text(arg: str | None) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _parse_cli_state(args) -> tuple:
    text = _read_state_text(getattr(args, "state", None))
    return parse_state(text, default_order=args.order, normalize=not args.raw)


def _add_state_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("state", nargs="?",
                   help="state expression; '-' or omitted reads stdin, '@FILE' reads a file")
    p.add_argument("--order", help="default mode order for states that omit one")
    p.add_argument("--raw", action="store_true", help="skip normalization")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _cmd_check_car(args) -> int:
    n = args.modes
    if n > 6:
        raise SizeError(f"--modes {n} exceeds the 6-mode cap")
    if n < 1:
        raise SizeError("--modes must be at least 1")
    order = "abcdefghijkl"[:n]
    dim = 2**n
    identity = np.eye(dim)
    zero = np.zeros((dim, dim))
    failures = []
    checked = 0
    for i in order:
        for j in order:
            pairs = [
                (annihilate(i), create(j), identity if i == j else zero,
                 f"{{{i}, {j}+}}"),
                (annihilate(i), annihilate(j), zero, f"{{{i}, {j}}}"),
                (create(i), create(j), zero, f"{{{i}+, {j}+}}"),
            ]
            for x, y, expected, label in pairs:
                got = anticommutator(x, y, order)
                if args.inject_bug == "sign-flip":
                    got = -got
                checked += 1
                if not np.array_equal(got, expected):
                    failures.append(label)
    result = {
        "schema": SCHEMA,
        "modes": n,
        "anticommutators_checked": checked,
        "failures": failures,
    }
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        print(f"checked {checked} anticommutators over {n} modes: "
              + ("all satisfied" if not failures else f"FAILED {failures}"))
    return EXIT_OK if not failures else EXIT_CHECK


def _cmd_sweep(args) -> int:
    ket, notes = _parse_cli_state(args)
    conventions = [c.strip() for c in args.conventions.split(",") if c.strip()]
    report = run_sweep(ket, set(args.keep), conventions, enforce_ssr=args.enforce_ssr)
    report["diagnostics"] = notes
    print(render_report(report))
    if not fermionic_invariance_holds(report):
        print("error: a fermionic convention was not ordering-invariant",
              file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _cmd_demo(args) -> int:
    transcript = run_demo(bug=args.inject_bug)
    if args.json:
        print(json.dumps(transcript, indent=2))
    else:
        print(format_transcript(transcript))
        print("--- transcript ---")
        print(json.dumps(transcript, indent=2))
    return EXIT_OK


def _cmd_validate_ssr(args) -> int:
    ket, notes = _parse_cli_state(args)
    verdict = validate_ket(ket)
    payload = {"schema": SCHEMA, "ssr": verdict_json(verdict), "diagnostics": notes}
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"status: {verdict.status.value}"
              + (f" ({verdict.sector.value})" if verdict.sector else ""))
        print(f"even weight: {verdict.even_weight:.12g}")
        print(f"odd weight:  {verdict.odd_weight:.12g}")
    if args.enforce_ssr and verdict.is_violation:
        print("error: parity superselection violated", file=sys.stderr)
        return EXIT_SSR
    return EXIT_OK


def _cmd_trace(args) -> int:
    ket, notes = _parse_cli_state(args)
    convention = CONVENTION_NAMES[args.convention]
    if args.enforce_ssr and validate_ket(ket).is_violation:
        print("error: parity superselection violated", file=sys.stderr)
        return EXIT_SSR
    dm = density_matrix(ket, canonical=(convention is TraceConvention.CANONICAL))
    reduced = partial_trace(dm, set(args.keep), convention)
    payload = {
        "schema": SCHEMA,
        "keep": "".join(reduced.order),
        "convention": args.convention,
        "matrix": matrix_json(reduced),
        "trace": reduced.trace(),
        "diagnostics": notes,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_entropy(args) -> int:
    ket, notes = _parse_cli_state(args)
    dm = density_matrix(ket)
    if args.keep:
        dm = partial_trace(dm, set(args.keep), TraceConvention.CANONICAL)
    value = von_neumann_entropy(dm)
    if args.json:
        print(json.dumps({"schema": SCHEMA, "entropy_bits": value,
                          "diagnostics": notes}, indent=2))
    else:
        print(f"entropy: {value:.12g} bits")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carfock",
        description="Fermionic Fock-space algebra with full sign bookkeeping",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-car", help="verify the anticommutation relations")
    p.add_argument("--modes", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.add_argument("--inject-bug", choices=["sign-flip"], help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_check_car)

    p = sub.add_parser("sweep", help="reduce a state under every mode ordering")
    _add_state_options(p)
    p.add_argument("--keep", required=True, help="modes to keep, e.g. ab")
    p.add_argument("--conventions", default="fermionic,naive",
                   help="comma list of: fermionic, skip-sign, naive")
    p.add_argument("--enforce-ssr", action="store_true",
                   help="abort on superselection-violating input")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("demo-paper",
                       help="run the worked three-mode walkthrough end to end")
    p.add_argument("--json", action="store_true")
    p.add_argument("--inject-bug",
                   choices=["naive-adjoint", "unsigned-reorder", "unsigned-trace"],
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("validate-ssr", help="report the parity-sector verdict")
    _add_state_options(p)
    p.add_argument("--enforce-ssr", action="store_true")
    p.set_defaults(func=_cmd_validate_ssr)

    p = sub.add_parser("trace", help="partial trace of a state")
    _add_state_options(p)
    p.add_argument("--keep", required=True)
    p.add_argument("--convention", default="fermionic",
                   choices=sorted(CONVENTION_NAMES))
    p.add_argument("--enforce-ssr", action="store_true")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("entropy", help="von Neumann entropy in bits")
    _add_state_options(p)
    p.add_argument("--keep", help="reduce to these modes first")
    p.set_defaults(func=_cmd_entropy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DemoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except SsrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SSR
    except CarFockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
