"""``srikit`` command line: psi integrals, strata sums, bounds and sweeps."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from srikit.decorations import enumerate_fixed_points, format_decoration
from srikit.errors import ConsistencyError, InputError
from srikit.graph_core import count_acyclic_orientations, parse_graph_text
from srikit.nonvanishing import count_matchings, count_mismatched_colorings, nonzero_predicate
from srikit.profiles import ExponentProfile, parse_points, parse_sizes
from srikit.psi_engine import intersection_number
from srikit.strata import strata_report

EXIT_OK, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, rec: dict, text: str):
        line = json.dumps(rec, sort_keys=True) if self.fmt == "jsonl" else text
        self.stream.write(line.rstrip("\n") + "\n")


def _profile(args) -> ExponentProfile:
    prof = parse_sizes(args.profile)
    return ExponentProfile.from_points(prof, parse_points(args.k), normalize=args.normalize)


def _read_graph(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc}") from None
    return parse_graph_text(text)


# -- subcommands -----------------------------------------------------------------


def cmd_integral(args, out: Output) -> int:
    e = _profile(args)
    method = args.method.replace("-", "_")
    value = intersection_number(e, method)
    out.record(
        {"kind": "integral", "profile": str(e), "method": method, "value": value},
        str(value),
    )
    if args.list_fixed_points:
        for idx, d in enumerate(enumerate_fixed_points(e), 1):
            text = format_decoration(d)
            out.record({"kind": "fixed_point", "index": idx, "decoration": text}, f"# {idx}\n{text}")
    return EXIT_OK


def cmd_strata_sum(args, out: Output) -> int:
    g = _read_graph(args.graph)
    rep = strata_report(g, args.p - 1, args.q - 1)
    rec = {"kind": "strata_sum", **rep}
    text = (
        f"sum {rep['sum']}  |ACO| {rep['aco']}  n {rep['n']}  "
        f"expected sign {rep['expected_sign']:+d}  sign {'ok' if rep['sign_ok'] else 'MISMATCH'}"
    )
    out.record(rec, text)
    return EXIT_OK if rep["sign_ok"] else EXIT_CONSISTENCY


def cmd_aco(args, out: Output) -> int:
    g = _read_graph(args.graph)
    count = count_acyclic_orientations(g)
    out.record({"kind": "aco", "vertices": g.vertex_count, "edges": len(g.edges), "count": count}, str(count))
    return EXIT_OK


def cmd_bounds(args, out: Output) -> int:
    e = _profile(args)
    lower = count_mismatched_colorings(e)
    value = intersection_number(e, args.method.replace("-", "_"))
    upper = count_matchings(e)
    ok = lower <= value <= upper
    out.record(
        {"kind": "bounds", "profile": str(e), "lower": lower, "value": value, "upper": upper, "ok": ok},
        f"{lower} <= {value} <= {upper}",
    )
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_nonzero(args, out: Output) -> int:
    e = _profile(args)
    rep = nonzero_predicate(e)
    rows = [r.as_dict() for r in rep.rows]
    if out.fmt == "jsonl":
        out.record({"kind": "nonzero", "profile": str(e), "nonzero": rep.nonzero, "rows": rows}, "")
        return EXIT_OK
    out.stream.write(f"{e}: {'nonzero' if rep.nonzero else 'zero'}\n")
    out.stream.write("color  k  ell  r  bound  check\n")
    for r in rows:
        check = f"{r['k']}<={r['bound']} {'ok' if r['ok'] else 'FAILS'}" if r["applies"] else "n/a"
        out.stream.write(f"{r['color']:>5} {r['k']:>2} {r['ell']:>4} {r['r']:>2} {r['bound']:>6}  {check}\n")
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    from srikit.verify import check_graph, check_merge_split, graph_suite, sweep_profiles

    failures = 0
    for rec in sweep_profiles(args.max_n):
        failures += not rec.ok
        if out.fmt == "jsonl":
            out.record({"kind": "profile", **rec.as_dict()}, "")
        elif not rec.ok or args.verbose:
            out.record({}, f"{'PASS' if rec.ok else 'FAIL'} {rec.profile} value {rec.oracle} "
                           f"decorations {rec.decorations}")
            for msg in rec.messages:
                out.record({}, "    " + msg.replace("\n", "\n    "))
    for n in range(1, args.max_n + 1):
        osp = check_merge_split(n)
        failures += not osp.ok
        out.record(
            {"kind": "merge_split", "n": n, "osps": osp.osps, "violations": osp.violations, "ok": osp.ok},
            f"{'PASS' if osp.ok else 'FAIL'} merge-split n={n} osps {osp.osps}",
        )
    graphs = 0
    for g, rep in graph_suite(max_labelled=args.graph_vertices, max_classes=args.graph_vertices):
        rec = check_graph(g, trees=rep)
        graphs += 1
        failures += not rec.ok
        if out.fmt == "jsonl":
            out.record({"kind": "graph", **rec.as_dict()}, "")
        elif not rec.ok:
            out.record({}, f"FAIL graph {rec.edges}: sum {rec.strata_sum} aco {rec.aco}")
    out.record(
        {"kind": "summary", "max_n": args.max_n, "graphs": graphs, "failures": failures, "ok": not failures},
        f"{'PASS' if not failures else 'FAIL'}: profiles n<={args.max_n}, graphs <= "
        f"{args.graph_vertices} vertices ({graphs}), failures {failures}",
    )
    return EXIT_OK if not failures else EXIT_CONSISTENCY


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="srikit", description=__doc__)
    parser.add_argument("--format", choices=("text", "jsonl"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def profile_args(p):
        p.add_argument("--profile", required=True, help="color class sizes, e.g. 5,4,1")
        p.add_argument("--k", default="", help="1-indexed point:exponent list, e.g. 1:2,6:2,7:3")
        p.add_argument("--normalize", action="store_true", help="sort exponents within each color")

    p = sub.add_parser("integral", help="intersection number of a psi product")
    profile_args(p)
    p.add_argument("--method", choices=("fixed-points", "oracle", "both"), default="both")
    p.add_argument("--list-fixed-points", action="store_true")
    p.set_defaults(func=cmd_integral)

    for name, func, helptext in (
        ("strata-sum", cmd_strata_sum, "signed count of graph-stable strata"),
        ("aco", cmd_aco, "number of acyclic orientations"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("graph", help="graph file ('n=<count>' then 'u v' lines, 1-indexed); '-' for stdin")
        if name == "strata-sum":
            p.add_argument("--p", type=int, required=True, help="first dominating vertex (1-indexed)")
            p.add_argument("--q", type=int, required=True, help="second dominating vertex (1-indexed)")
        p.set_defaults(func=func)

    p = sub.add_parser("bounds", help="colorings <= value <= matchings")
    profile_args(p)
    p.add_argument("--method", choices=("fixed-points", "oracle", "both"), default="oracle")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("nonzero", help="positivity test with the per-color table")
    profile_args(p)
    p.set_defaults(func=cmd_nonzero)

    p = sub.add_parser("verify", help="exhaustive involution and identity sweep")
    p.add_argument("--max-n", type=int, default=6, help="largest number of marked points")
    p.add_argument("--graph-vertices", type=int, default=4, help="largest non-pole vertex count")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"srikit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"srikit: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
