"""Command-line entry point: ``frobsplit verify | eval | groebner``."""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .groebner import Budget, BudgetExceeded, Ideal
from .poly import ParseError, PolyRing, as_order
from .slgroup import SlnRing, companion_point
from .suite import EXIT_CODES, ConfigError, SuiteConfig, format_text, run_suite

EXIT_CONFIG = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def _fibers(text: str):
    if text in ("all", "unipotent"):
        return text
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        try:
            out.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise UsageError(f"bad fiber list {text!r}; use all, unipotent, or '0;1' / '0,1;1,2'")
    if not out:
        raise UsageError("empty fiber list")
    return out


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    try:
        cfg = SuiteConfig(
            n=args.n, p=args.p, fibers=_fibers(args.fibers), seed=args.seed, trials=args.trials,
            budget_pairs=args.budget_pairs, budget_basis=args.budget_basis, jobs=args.jobs,
            timings=not args.no_timings,
        ).validate()
    except (ConfigError, UsageError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run_suite(cfg, __version__)
    if args.output == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.path)
    else:
        _emit(format_text(report) + "\n", args.path)
    return EXIT_CODES[report["summary"]["status"]]


def _point(R: SlnRing, args):
    if args.companion is not None:
        a = [int(x) for x in args.companion.split(",")] if args.companion else []
        return companion_point(R, a).rows()
    if args.point is None:
        return R.identity().rows()
    rows = [[int(x) for x in r.split(",")] for r in args.point.split(";")]
    if len(rows) != R.n or any(len(r) != R.n for r in rows):
        raise UsageError(f"point must be a {R.n}x{R.n} matrix written 'a,b;c,d'")
    return rows


def cmd_eval(args) -> int:
    try:
        R = SlnRing(args.n, args.p)
        point = _point(R, args)
    except (ValueError, UsageError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    bindings = {"det": R.det_poly}
    for i in range(1, R.n):
        bindings[f"chi{i}"] = R.chars[i - 1]
        bindings[f"m{i}"] = R.corner_minors[i - 1]
    try:
        f = R.ring.parse(args.expr, bindings)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(R.evaluate(f, point))
    return 0


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def read_ideal_file(text: str) -> list:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def cmd_groebner(args) -> int:
    try:
        with open(args.file) if args.file != "-" else sys.stdin as fh:
            lines = read_ideal_file(fh.read())
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not lines:
        print("config error: no generators in input", file=sys.stderr)
        return EXIT_CONFIG
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
    else:
        names = []
        for line in lines:
            for nm in _NAME.findall(line):
                if nm not in names:
                    names.append(nm)
    try:
        ring = PolyRing(names, args.p)
        order = as_order(args.order)
        order.blocks(ring)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        gens = [ring.parse(line) for line in lines]
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        basis = Ideal(gens, order, ring, Budget(args.budget_pairs, args.budget_basis)).basis
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_CODES["budget"]
    for g in basis:
        print(g)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="frobsplit", description=__doc__)
    ap.add_argument("--version", action="version", version=f"frobsplit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the splitting checks over a set of Steinberg fibers")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--fibers", default="unipotent",
                   help="all | unipotent | explicit list like '0;1' or '0,1;1,1'")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--budget-pairs", type=int, default=Budget.max_pairs)
    v.add_argument("--budget-basis", type=int, default=Budget.max_basis)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--output", choices=["text", "json"], default="text")
    v.add_argument("--path", help="write the report here instead of stdout")
    v.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable reports")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a polynomial at a matrix")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--expr", required=True, help="polynomial in x11..xnn, det, chiI, mI")
    grp = e.add_mutually_exclusive_group()
    grp.add_argument("--point", help="matrix rows separated by ';', entries by ','")
    grp.add_argument("--companion", help="fiber coordinates a1,...,a(n-1)")
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("groebner", help="reduced Groebner basis of generators in a file")
    g.add_argument("file", help="one generator per line, '#' comments; '-' for stdin")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--vars", help="comma-separated variable order (default: order of appearance)")
    g.add_argument("--order", default="grevlex", help="grevlex | lex | elim(k)")
    g.add_argument("--budget-pairs", type=int, default=Budget.max_pairs)
    g.add_argument("--budget-basis", type=int, default=Budget.max_basis)
    g.set_defaults(func=cmd_groebner)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
