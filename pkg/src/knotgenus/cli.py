"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 skein budget exceeded, 4 failed
verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructors as C
from .bounds import LedgerMismatch, SkeinTree, SkeinTreeError, ledger_check, ledger_tree, propagate, to_dot
from .diagram import DiagramError, PDParseError, format_pd, parse_pd
from .homfly import BudgetExceeded, invariant_report
from .specs import SpecError, build_spec
from .verify import format_table, run_suite

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _parser():
    p = argparse.ArgumentParser(prog="knotgenus", description="Link diagrams, HOMFLY polynomials and genus bounds.")
    p.add_argument("--budget", type=int, default=None, help="skein node ceiling (default: KNOT_BUDGET or 5000000)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="print the PD code of a constructed diagram")
    b.add_argument("spec", help="e.g. pretzel:3,1,1 or torus2:3/double:wh,n=0,clasp=+")

    inv = sub.add_parser("invariant", help="invariant report for a diagram")
    _source_args(inv)
    inv.add_argument("--emit-poly", choices=("text", "json"), help="print only the polynomial in this format")

    dbl = sub.add_parser("double", help="flat or Whitehead double of a constructed diagram")
    dbl.add_argument("--spec", required=True, help="diagram to double")
    dbl.add_argument("--kind", choices=("flat", "wh"), default="flat")
    dbl.add_argument("--n", type=int, default=0, help="full twists")
    dbl.add_argument("--clasp", choices=("+", "-"), default="+")
    dbl.add_argument("--site", type=int, default=None, help="arc label carrying the clasp")
    dbl.add_argument("--hidden", action="store_true", help="put the twists inside a doubled crossing")
    dbl.add_argument("--invariant", action="store_true", help="print the invariant report instead of PD")
    dbl.add_argument("--emit-poly", choices=("text", "json"))

    ver = sub.add_parser("verify", help="run the acceptance battery")
    ver.add_argument("--suite", choices=("paper",), default="paper")
    ver.add_argument("--stretch", action="store_true", help="also run the 34-crossing doubles of P(3,3,-2) and P(3,-3,2)")
    ver.add_argument("--json", action="store_true")

    led = sub.add_parser("ledger", help="propagate z-degree bounds through a skein tree")
    led.add_argument("--c", type=int, default=None, help="crossing number for the labeled tree")
    led.add_argument("--fixture", choices=("standard", "degraded", "split-unknot"), default="standard")
    led.add_argument("--tree", help="SkeinTree JSON file to propagate instead")
    led.add_argument("--json", action="store_true")
    led.add_argument("--emit-dot", metavar="PATH", help="write Graphviz DOT here ('-' for stdout)")
    return p


def _source_args(p):
    p.add_argument("spec", nargs="?", help="constructor spec string")
    p.add_argument("--file", help="PD file")
    p.add_argument("--stdin", action="store_true", help="read PD text from standard input")


def _load(args, stdin):
    given = [x for x in (args.spec, args.file, args.stdin or None) if x]
    if len(given) != 1:
        raise _Fail(EXIT_PARSE, "give exactly one of SPEC, --file or --stdin")
    if args.spec:
        return _spec(args.spec)
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _Fail(EXIT_PARSE, f"cannot read {args.file}: {exc.strerror}") from None
        where = args.file
    else:
        text = stdin.read()
        where = "<stdin>"
    try:
        return parse_pd(text)
    except PDParseError as exc:
        raise _Fail(EXIT_PARSE, f"{where}: {exc}") from None


def _spec(text):
    try:
        return build_spec(text)
    except SpecError as exc:
        raise _Fail(EXIT_PARSE, f"spec {text!r}: {exc}") from None


def _report(d, args, out):
    try:
        rep = invariant_report(d, args.budget)
    except BudgetExceeded as exc:
        raise _Fail(EXIT_BUDGET, str(exc)) from None
    if args.emit_poly == "text":
        out.write(str(rep.homfly) + "\n")
    elif args.emit_poly == "json":
        out.write(json.dumps(rep.homfly.to_json()) + "\n")
    else:
        out.write(json.dumps(rep.to_json(), indent=2) + "\n")


def _cmd_ledger(args, out):
    if args.tree:
        try:
            with open(args.tree, encoding="utf-8") as fh:
                tree = SkeinTree.from_json(fh.read(), c=args.c)
            bounds = propagate(tree)
        except (OSError, ValueError) as exc:
            raise _Fail(EXIT_PARSE, f"{args.tree}: {exc}") from None
        if args.json:
            out.write(json.dumps({n: b.to_json() for n, b in bounds.items()}, indent=2) + "\n")
        else:
            for n in tree.order():
                out.write(f"{n} {bounds[n]}\n")
            out.write(f"root {bounds[tree.find_root()]}\n")
        _dot(args, tree, bounds, out)
        return EXIT_OK
    if args.c is None:
        raise _Fail(EXIT_PARSE, "ledger needs --c N or --tree FILE")
    if args.c < 3:
        raise _Fail(EXIT_PARSE, "--c must be at least 3")
    try:
        t = ledger_check(args.c, args.fixture)
    except LedgerMismatch as exc:
        out.write(json.dumps(exc.to_json(), indent=2) + "\n" if args.json else str(exc) + "\n")
        return EXIT_VERIFY
    out.write(json.dumps(t.to_json(), indent=2) + "\n" if args.json else t.text() + "\n")
    _dot(args, ledger_tree(args.c, args.fixture), t.bounds, out)
    return EXIT_OK


def _dot(args, tree, bounds, out):
    if not args.emit_dot:
        return
    text = to_dot(tree, bounds)
    if args.emit_dot == "-":
        out.write(text)
    else:
        with open(args.emit_dot, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv=None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    args = _parser().parse_args(argv)
    try:
        if args.command == "build":
            out.write(format_pd(_spec(args.spec)))
        elif args.command == "invariant":
            _report(_load(args, stdin), args, out)
        elif args.command == "double":
            base = _spec(args.spec)
            try:
                if args.kind == "flat":
                    d = C.flat_double(base, args.n, site=args.site, hidden=args.hidden)
                else:
                    d = C.whitehead_double(base, args.n, args.clasp, site=args.site, hidden=args.hidden)
            except DiagramError as exc:
                raise _Fail(EXIT_PARSE, str(exc)) from None
            if args.invariant or args.emit_poly:
                _report(d, args, out)
            else:
                out.write(format_pd(d))
        elif args.command == "verify":
            results = run_suite(args.budget, stretch=args.stretch)
            if args.json:
                out.write(json.dumps([r.to_json() for r in results], indent=2) + "\n")
            else:
                out.write(format_table(results))
            return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
        elif args.command == "ledger":
            return _cmd_ledger(args, out)
    except _Fail as exc:
        print(f"knotgenus: {exc}", file=sys.stderr)
        return exc.code
    except SkeinTreeError as exc:
        print(f"knotgenus: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


def main():  # pragma: no cover - thin wrapper
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
