"""Command line front end.

Exit codes: 0 ok, 1 usage, 2 parse or validation error, 3 genericity
failure, 4 assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import OddCrossingSum, build_diagram
from .doubling import GenericityFailure, double
from .dsl import emit, parse
from .fuzz import run_fuzz
from .link_invariants import (
    compute_report,
    determinant_of,
    jones,
    load_reference_table,
)
from .render import render_svg
from .tangles import (
    DivideError,
    InvariantViolation,
    assemble_graph,
    count_features,
    euler_from_counts,
    trace_doubled_components,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_GENERICITY, EXIT_ASSERT = range(5)


class UsageError(Exception):
    pass


class NotAKnot(DivideError):
    def __init__(self, mu):
        super().__init__(f"surgery needs a knot, but the link has {mu} components")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", "-i", metavar="PATH", help="product file, or - for stdin")
    src.add_argument("--inline", metavar="DSL", help="product given on the command line")
    common.add_argument("--format", choices=["text", "json", "svg", "pd", "gauss"], default="text")
    common.add_argument("--offset-side", choices=["left", "right"], default="left")
    common.add_argument("--reference-table", metavar="PATH", help="name + PD code per line")

    ap = _Parser(prog="graphdivide", description="Graph divides as tangle products.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="parse and validate a product")
    sub.add_parser("invariants", parents=[common], help="tb three ways, slice data, Jones")
    dg = sub.add_parser("diagram", parents=[common], help="PD or Gauss code of the link")
    dg.add_argument("kind", choices=["pd", "gauss"])
    sub.add_parser("jones", parents=[common], help="Jones polynomial and determinant")
    sub.add_parser("render", parents=[common], help="SVG of divide, doubling and diagram")
    fz = sub.add_parser("fuzz", parents=[common], help="random cross-checks")
    fz.add_argument("--seed", type=int, default=42)
    fz.add_argument("--count", type=int, default=200)
    fz.add_argument("--max-tangles", type=int, default=12)
    fz.add_argument("--max-x", type=int, default=6)
    fz.add_argument("--trees-only", action="store_true", help="embedded trees; also expect the unknot")
    sub.add_parser("surgery", parents=[common], help="excluded surgery coefficient of a knot")
    return ap


def _read_product(args):
    if args.inline is not None:
        text = args.inline
    elif args.input == "-":
        text = sys.stdin.read()
    elif args.input:
        with open(args.input) as fh:
            text = fh.read()
    else:
        raise UsageError("give the product with --input/-i or --inline")
    p = parse(text)
    args.product_text = emit(p)
    return p


def _table(args):
    return load_reference_table(args.reference_table) if args.reference_table else load_reference_table()


def cmd_check(args, out):
    p = _read_product(args)
    counts = count_features(p)
    chi = euler_from_counts(counts)
    info = {
        "product": emit(p),
        "tangles": len(p),
        "double_points": counts.delta,
        "euler_characteristic": chi,
        "euler_characteristic_direct": assemble_graph(p).euler_direct,
        "components": trace_doubled_components(p),
    }
    if args.format == "json":
        print(json.dumps(info, indent=2), file=out)
    else:
        for k, v in info.items():
            print(f"{k}: {v}", file=out)


def cmd_invariants(args, out):
    p = _read_product(args)
    r = compute_report(p, args.offset_side, _table(args))
    if args.format == "json":
        print(r.to_json(), file=out)
        return
    print(f"product: {emit(p)}", file=out)
    print(f"tb: formula {r.tb_formula}, table {r.tb_table}, geometric {r.tb_geometric}", file=out)
    print(f"delta {r.delta}, chi(G) {r.chi_G}, chi_s {r.chi_s}, mu {r.mu}, g_s {r.g_s}", file=out)
    print(f"diagram: {r.crossings} crossings, writhe {r.writhe}", file=out)
    print(f"jones: {r.jones_text}", file=out)
    print(f"determinant: {r.determinant}", file=out)
    print(f"identification: {r.identification}", file=out)
    print("checks: tb three ways agree; tb = -chi_s" + ("; tb = 2 g_s - 1" if r.mu == 1 else ""), file=out)


def cmd_diagram(args, out):
    p = _read_product(args)
    d = build_diagram(double(p).curves)
    if args.kind == "pd":
        if args.format == "json":
            print(json.dumps([list(x) for x in d.pd_code]), file=out)
        else:
            for x in d.pd_code:
                print("X(%d,%d,%d,%d)" % x, file=out)
    else:
        if args.format == "json":
            print(json.dumps(d.gauss_code), file=out)
        else:
            for comp in d.gauss_code:
                print(" ".join(str(v) for v in comp), file=out)


def cmd_jones(args, out):
    p = _read_product(args)
    v = jones(build_diagram(double(p).curves))
    det = determinant_of(v)
    if args.format == "json":
        print(json.dumps({"jones": v.to_dict(), "determinant": det}), file=out)
    else:
        print(f"V(t) = {v.format('t', half=True)}", file=out)
        print(f"determinant = {det}", file=out)


def cmd_render(args, out):
    p = _read_product(args)
    out.write(render_svg(p, args.offset_side))


def cmd_fuzz(args, out):
    s = run_fuzz(args.seed, args.count, args.max_tangles, args.max_x, args.trees_only)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "seed": s.seed,
                    "count": s.count,
                    "passed": s.passed,
                    "seconds": round(s.seconds, 3),
                    "failures": [{"index": r.index, "product": r.dsl, "failures": r.failures} for r in s.results if not r.ok],
                },
                indent=2,
            ),
            file=out,
        )
    else:
        for line in s.lines():
            print(line, file=out)
    return EXIT_OK if s.passed == s.count else EXIT_ASSERT


def cmd_surgery(args, out):
    p = _read_product(args)
    counts = count_features(p)
    graph = assemble_graph(p)
    mu = trace_doubled_components(p)
    if mu != 1:
        raise NotAKnot(mu)
    tb = 2 * counts.delta - euler_from_counts(counts)
    if counts.delta == 0 and graph.euler_direct == 1 and graph.is_embedded_tree:
        report = {"applicable": False, "reason": "embedded tree (delta 0, chi 1): the knot is trivial"}
        text = "NotApplicable: embedded tree (delta 0, chi 1), the knot is trivial"
    else:
        report = {"applicable": True, "TB": tb, "excluded_r": tb}
        text = (
            f"TB(K) = {tb}; excluded coefficient r = {tb}; tight for all r != {tb} "
            "(arithmetic content only; tightness itself is not checked)"
        )
    print(json.dumps(report) if args.format == "json" else text, file=out)


COMMANDS = {
    "check": cmd_check,
    "invariants": cmd_invariants,
    "diagram": cmd_diagram,
    "jones": cmd_jones,
    "render": cmd_render,
    "fuzz": cmd_fuzz,
    "surgery": cmd_surgery,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code = COMMANDS[args.command](args, out)
        return code or EXIT_OK
    except (UsageError, OSError) as exc:
        print(f"graphdivide: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivideError as exc:
        code, err = EXIT_PARSE, exc
    except GenericityFailure as exc:
        code, err = EXIT_GENERICITY, exc
    except (InvariantViolation, OddCrossingSum, AssertionError) as exc:
        code, err = EXIT_ASSERT, exc
    print(f"graphdivide: {type(err).__name__}: {err}", file=sys.stderr)
    if getattr(args, "product_text", None):
        print(f"graphdivide: product: {args.product_text}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
