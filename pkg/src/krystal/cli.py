"""Command line entry point: ``krystal verify | kr | demazure | crystal | datum``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import BudgetError, KrystalError
from .rootdata import load_datum, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tag(args):
    """Combine ``--type`` with ``--rank`` when the type names only a family (``A~`` + 2 -> ``A2~``)."""
    tag = args.type
    if tag and getattr(args, "rank", None) is not None and not re.search(r"\d", tag.split("^")[0]):
        m = re.match(r"([A-Ga-g])(.*)", tag)
        if m is None:
            raise KrystalError(f"cannot combine type {tag!r} with a rank")
        tag = f"{m.group(1).upper()}{args.rank}{m.group(2)}"
    return tag


def _dump(obj):
    return json.dumps(obj, sort_keys=True, default=str)


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _run_unit(name, opts):
    from .verify import run_selector
    return run_selector(name, opts)


def cmd_verify(args):
    from .verify import CRITERIA, SELECTORS, Options

    names = list(SELECTORS) if args.selector == "all" else [args.selector]
    for name in names:
        if name not in SELECTORS and name not in CRITERIA:
            raise KrystalError(f"unknown selector {name!r}; choose from all, "
                               + ", ".join(list(SELECTORS) + list(CRITERIA)))
    opts = Options(depth=args.depth, maxlen=args.maxlen, budget=args.budget, lmax=args.lmax,
                   type=_tag(args), k=args.k)

    def unit(name):
        if name in CRITERIA:
            return CRITERIA[name](opts)
        return _run_unit(name, opts)

    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            batches = list(pool.map(_run_unit, names, [opts] * len(names)))
    else:
        batches = [unit(n) for n in names]
    reports = [r for batch in batches for r in batch]
    if not reports:
        raise KrystalError("no verification case matches the given filters")

    _emit("".join(_dump(r.to_json()) + "\n" for r in reports), args.out)
    for r in reports:
        print(f"{r.status:<17} {r.case}  {r.wall_time:.2f}s", file=sys.stderr)
    if args.figures:
        if not args.out:
            raise KrystalError("--figures needs --out to place the images")
        from .plotting import render_report_figures
        for path in render_report_figures(reports, args.out):
            print(f"figure {path}", file=sys.stderr)

    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.status == "conditional-pass" for r in reports) and not args.allow_conditional:
        return EXIT_FAIL
    return EXIT_OK


def _export(graph, args, label=None, payload=None, extra=None):
    if args.dot:
        _emit(graph.to_dot(label), args.out)
    else:
        obj = graph.to_json(payload)
        if extra:
            obj.update(extra)
        _emit(_dump(obj) + "\n", args.out)


def cmd_kr(args):
    from .levelzero import kr_crystal
    datum = load_datum(_tag(args))
    graph = kr_crystal(datum, args.k)
    _export(graph, args, label=lambda t: "".join(map(str, t)),
            payload=lambda t: {"column": list(t)})
    return EXIT_OK


def cmd_demazure(args):
    from .demazure import b_minus, b_plus
    datum = load_datum(_tag(args))
    nu = parse_weight(datum, args.weight)
    word = None if args.word is None else tuple(int(c) for c in args.word.split(",") if c)
    level = datum.level(nu)
    if level > 0:
        dem = b_minus(datum, nu, word=word, budget=args.budget)
    elif level < 0:
        dem = b_plus(datum, nu, word=word, budget=args.budget)
    else:
        raise KrystalError("Demazure sets are built for nonzero level; use `kr` for level zero")
    if args.dot:
        _emit(dem.graph().to_dot(), args.out)
    else:
        _emit(_dump(dem.to_json()) + "\n", args.out)
    return EXIT_OK


def cmd_crystal(args):
    from .paths import build_B
    datum = load_datum(_tag(args))
    lam = parse_weight(datum, args.weight)
    graph = build_B(datum, lam, depth=args.depth, budget=args.budget)
    _export(graph, args, payload=lambda p: {"path": p.to_json()})
    return EXIT_OK


def cmd_datum(args):
    datum = load_datum(_tag(args))
    obj = datum.to_json()
    if datum.affine:
        obj["c"] = {str(i): str(datum.c_const(i)) for i in datum.I0}
        obj["sym"] = [str(x) for x in datum.sym]
    _emit(_dump(obj) + "\n", args.out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--depth", type=int, default=6)
    common.add_argument("--maxlen", type=int)
    common.add_argument("--budget", type=int, default=200_000)
    common.add_argument("--out")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default for exports)")
    fmt.add_argument("--dot", action="store_true", help="Graphviz DOT output")

    parser = _Parser(prog="krystal", description="Exact crystal and quantum-group verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run acceptance checks, write NDJSON")
    v.add_argument("selector")
    v.add_argument("--type")
    v.add_argument("--lmax", type=int, default=6)
    v.add_argument("--allow-conditional", action="store_true")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--figures", action="store_true", help="render PNG figures beside --out")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("kr", parents=[common], help="export a level-zero column crystal")
    k.add_argument("type")
    k.set_defaults(func=cmd_kr)

    d = sub.add_parser("demazure", parents=[common], help="export a Demazure set")
    d.add_argument("type")
    d.add_argument("--weight", required=True)
    d.add_argument("--word", help="comma-separated reduced word")
    d.set_defaults(func=cmd_demazure)

    c = sub.add_parser("crystal", parents=[common], help="export a truncated path crystal")
    c.add_argument("type")
    c.add_argument("--weight", required=True)
    c.set_defaults(func=cmd_crystal)

    t = sub.add_parser("datum", parents=[common], help="print Cartan data")
    t.add_argument("type")
    t.set_defaults(func=cmd_datum)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "kr" and args.k is None:
        print("krystal: error: kr needs --k", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"krystal: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KrystalError as exc:
        print(f"krystal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
