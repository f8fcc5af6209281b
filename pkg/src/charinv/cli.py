"""Exact invariants of the reciprocal centralizer character, from the command line.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .brauer import analyze_brauer, audit_brauer, derived_order_from_table
from .chartab.dixon import InternalConsistencyError, dixon_schneider
from .chartab.io import TableFormatError, TableVerificationError, dumps_table, load_table
from .chartab.symmetric import mn_symmetric_table
from .chartab.table import BrauerTable
from .exactla import elementary_divisors, read_matrix
from .groups import (
    DEFAULT_MAX_CLASSES, DEFAULT_MAX_ORDER, BudgetExceeded, PermGroup, construct_named,
)
from .invariants import AUDIT_TITLES, CorruptTableError, analyze
from .suites import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        print(text)


def _group(spec: str, args) -> PermGroup:
    try:
        G = construct_named(spec)
    except (ValueError, OSError) as exc:
        raise InputError(str(exc)) from None
    G.max_order = args.max_order
    G.max_classes = args.max_classes
    for f in G.factors or ():
        f.max_order, f.max_classes = args.max_order, args.max_classes
    return G


def cmd_analyze(args) -> int:
    G = _group(args.spec, args)
    report = analyze(G, audit=not args.no_audit)
    _emit(report.dumps() if args.json else report.text(), args.out)
    return EXIT_OK if report.audits_ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [r for name in names for r in run_suite(name)]
    if args.json:
        text = json.dumps([r.to_json() for r in results], indent=2)
    else:
        passed = sum(r.status == "pass" for r in results)
        failed = sum(r.status == "fail" for r in results)
        lines = [r.line() for r in results]
        lines.append(f"{passed} passed, {failed} failed, {len(results) - passed - failed} skipped")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_MISMATCH if any(r.status == "fail" for r in results) else EXIT_OK


def cmd_table(args) -> int:
    src = args.source
    if Path(src).is_file():
        T = load_table(src)
    elif args.method == "mn":
        if not src.startswith("sym:"):
            raise InputError("--method mn needs a sym:N descriptor")
        try:
            T = mn_symmetric_table(int(src[4:]))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        T.name = src
    else:
        T = dixon_schneider(_group(src, args))
    text = dumps_table(T)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_snf(args) -> int:
    try:
        M = read_matrix(args.path)
    except (OSError, ValueError) as exc:
        raise InputError(f"{args.path}: {exc}") from None
    divs = [d for d in elementary_divisors(M)]
    _emit(json.dumps([str(d) for d in divs]) if args.json else " ".join(map(str, divs)), args.out)
    return EXIT_OK


def _companion(B: BrauerTable, path: Path, args):
    ref = B.ordinary_ref
    if not ref:
        return None
    candidate = path.parent / ref
    if candidate.is_file():
        return load_table(candidate)
    return dixon_schneider(_group(ref, args))


def cmd_brauer(args) -> int:
    path = Path(args.path)
    B = load_table(path)
    if not isinstance(B, BrauerTable):
        raise InputError(f"{path}: not a Brauer table (prime is 0)")
    T = _companion(B, path, args)
    derived = derived_order_from_table(T) if T is not None else None
    verdicts = audit_brauer(B, T, derived)
    A = analyze_brauer(B, T)
    if args.json:
        obj = {
            "table": B.name, "prime": B.prime,
            "f_p": {"ordinary": None if A.f_ordinary is None else str(A.f_ordinary),
                    "coefficients": str(A.f_coefficients), "snf": str(A.f_snf)},
            "Yp": [[str(x) for x in r] for r in A.Yp],
            "det": str(A.det), "det_expected": str(A.det_expected),
            "audit": [v.to_json() for v in verdicts],
        }
        if args.recover:
            obj["recovered"] = [str(x) for x in A.recovered]
            obj["stored"] = [str(x) for x in A.stored]
        text = json.dumps(obj, indent=2)
    else:
        lines = [
            f"table   {B.name}",
            f"prime   {B.prime}",
            f"f_p     ordinary {A.f_ordinary}, coefficients {A.f_coefficients}, snf {A.f_snf}",
            f"Y_p     {A.Yp}",
            f"det     {A.det} (expected {A.det_expected})",
        ]
        if args.recover:
            for j, (got, want) in enumerate(zip(A.recovered, A.stored)):
                label = B.classes[j].label or f"class {j + 1}"
                lines.append(f"class {j + 1} {label}: |C|_p' recovered {got}, stored {want}")
        for v in verdicts:
            w = ", ".join(f"{k}={x}" for k, x in v.witness.items())
            lines.append(f"audit {v.audit} {v.verdict}: {w}{' (' + v.note + ')' if v.note else ''}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_MISMATCH if any(v.verdict == "fail" for v in verdicts) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="exact structured output")
    common.add_argument("--out", metavar="PATH", help="write output to a file")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, metavar="N")
    common.add_argument("--max-classes", type=int, default=DEFAULT_MAX_CLASSES, metavar="K")

    p = argparse.ArgumentParser(prog="charinv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"charinv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="invariants and theorem audits of a group")
    a.add_argument("spec", help="group descriptor, e.g. sym:4 or product:sym:3+cyclic:2")
    a.add_argument("--no-audit", action="store_true", help="skip the theorem audits")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=[*SUITES, "all"])
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", parents=[common], help="emit a character-table file")
    t.add_argument("source", help="group descriptor or an existing table file")
    t.add_argument("--method", choices=["dixon", "mn"], default="dixon")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("snf", parents=[common], help="elementary divisors of a matrix file")
    s.add_argument("path")
    s.set_defaults(func=cmd_snf)

    b = sub.add_parser("brauer", parents=[common], help="audit a Brauer table file")
    b.add_argument("path")
    b.add_argument("--recover", action="store_true", help="list recovered centralizer p'-parts")
    b.set_defaults(func=cmd_brauer)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, TableFormatError, TableVerificationError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CorruptTableError, InternalConsistencyError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
