"""Command-line verification and inspection tool.

Subcommands:

* ``verify <check|all>``   run registered identity checks
* ``show <object>``        print a named bimould component
* ``lift``                 lift a single-length element through the bracket
  recursion (optionally with a replacement kernel)
* ``check-membership``     run the ls / ds / reversal-fixed predicates

Exit codes: 0 all checks passed, 1 an identity failed (witness printed),
2 usage or schema error.  ``FLEXION_THREADS`` caps check parallelism.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import jsonio
from .bimould import Bimould
from .constructions import (
    brown_lift,
    darapir_closed_form,
    diri_par,
    generalized_lift,
    pic,
    psi0,
    witt_generator,
)
from .dshuffle import HARMONIC_RULES, is_ds, is_ls, is_mantar_invariant
from .harness import CheckSpec, UnknownCheckError, check_names, describe_check, run_many
from .report import CheckReport

_EXIT_OK = 0
_EXIT_IDENTITY_FAILURE = 1
_EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexion",
        description="exact verification of flexion-calculus identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one registered check or all of them")
    verify.add_argument("check", help="check name or 'all' (see --list)")
    verify.add_argument("--list", action="store_true", dest="list_checks",
                        help="list registered checks and exit")
    verify.add_argument("--max-length", type=int, default=None)
    verify.add_argument("--degree", type=int, default=2)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--harmonic", choices=HARMONIC_RULES, default="symmetrized")
    verify.add_argument("--parity", choices=("literal", "homogeneity"),
                        default="homogeneity")
    verify.add_argument("--json", action="store_true")

    show = sub.add_parser("show", help="print a named bimould")
    show.add_argument("object", choices=("psi0", "pic", "diripar", "darapir", "s_d"))
    show.add_argument("--length", type=int, required=True)
    show.add_argument("--json", action="store_true")

    lift = sub.add_parser("lift", help="lift a single-length element")
    lift.add_argument("--input", required=True)
    lift.add_argument("--target-length", type=int, required=True)
    lift.add_argument("--psi", default=None,
                      help="replacement kernel (JSON bimould); default polar")
    lift.add_argument("--output", required=True)

    member = sub.add_parser("check-membership", help="ls / ds / V predicates")
    member.add_argument("space", choices=("ls", "ds", "V"))
    member.add_argument("--input", required=True)
    member.add_argument("--max-length", type=int, required=True)
    member.add_argument("--harmonic", choices=HARMONIC_RULES, default="symmetrized")
    member.add_argument("--parity", choices=("literal", "homogeneity"),
                        default="homogeneity")
    member.add_argument("--json", action="store_true")
    return parser


def _print_report(report: CheckReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(jsonio.report_to_json(report), indent=2))
        return
    print(f"{report.summary()} ({report.duration:.2f}s)")
    if not report.passed:
        for failure in report.failures[:5]:
            delta = "" if failure.delta is None else f": delta = {failure.delta}"
            print(f"    {failure.where}{delta}")
        if len(report.failures) > 5:
            print(f"    ... {len(report.failures) - 5} more")
    for key, value in report.extras.items():
        print(f"    note {key} = {value}")


def _cmd_verify(args) -> int:
    if args.list_checks:
        for name in check_names():
            print(f"{name}: {describe_check(name)}")
        return _EXIT_OK
    names = check_names() if args.check == "all" else [args.check]
    try:
        specs = [
            CheckSpec(
                name=name,
                max_length=args.max_length,
                degree=args.degree,
                trials=args.trials,
                seed=args.seed,
                harmonic_rule=args.harmonic,
                parity_mode=args.parity,
            )
            for name in names
        ]
        for spec in specs:
            describe_check(spec.name)
        reports = run_many(specs)
    except UnknownCheckError as exc:
        print(f"unknown check: {exc.args[0]}", file=sys.stderr)
        return _EXIT_USAGE
    if args.json:
        print(json.dumps(
            [jsonio.report_to_json(reports[name]) for name in names], indent=2))
    else:
        for name in names:
            _print_report(reports[name], as_json=False)
    return _EXIT_OK if all(r.passed for r in reports.values()) else _EXIT_IDENTITY_FAILURE


def _named_object(name: str, length: int) -> Bimould:
    if name == "psi0":
        return psi0(length)
    if name == "pic":
        return pic(length)
    if name == "diripar":
        return diri_par(length)
    if name == "darapir":
        return darapir_closed_form(length)
    return witt_generator(length)


def _cmd_show(args) -> int:
    if args.length < 1:
        print("--length must be >= 1", file=sys.stderr)
        return _EXIT_USAGE
    value = _named_object(args.object, args.length)
    if args.json:
        print(json.dumps(jsonio.bimould_to_json(value), indent=2))
    else:
        print(value)
    return _EXIT_OK


def _load_bimould(path: str) -> Bimould:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    return jsonio.bimould_from_json(data)


def _cmd_lift(args) -> int:
    f = _load_bimould(args.input)
    if args.target_length < 1:
        print("--target-length must be >= 1", file=sys.stderr)
        return _EXIT_USAGE
    kernel: Optional[Bimould] = None
    if args.psi is not None:
        kernel = _load_bimould(args.psi)
    if kernel is None:
        lifted = brown_lift(f, args.target_length)
    else:
        lifted = generalized_lift(kernel, f, args.target_length)
    with open(args.output, "w", encoding="utf-8") as handle:
        json.dump(jsonio.bimould_to_json(lifted), handle, indent=2)
        handle.write("\n")
    print(f"wrote lift of length-{f.min_length()} input "
          f"up to length {args.target_length} to {args.output}")
    return _EXIT_OK


def _cmd_membership(args) -> int:
    f = _load_bimould(args.input)
    if args.space == "ls":
        report = is_ls(f, args.max_length)
    elif args.space == "ds":
        report = is_ds(f, args.max_length, parity_mode=args.parity,
                       rule=args.harmonic)
    else:
        report = is_mantar_invariant(f, args.max_length)
    _print_report(report, args.json)
    return _EXIT_OK if report.passed else _EXIT_IDENTITY_FAILURE


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "show":
            return _cmd_show(args)
        if args.command == "lift":
            return _cmd_lift(args)
        return _cmd_membership(args)
    except (jsonio.SchemaError, json.JSONDecodeError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
