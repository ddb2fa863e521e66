"""Command line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict,
2 input error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import sys

from . import complex_topology as ct
from .evaluation import NotCollinear, PointConfig, canonical_tree, residual
from .formats import MatrixParseError, dumps, format_rat, parse_matrix, tree_to_json
from .splits import Coloring
from .tropical_core import tropical_rank_le2

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_matrix(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    try:
        return parse_matrix(text)
    except MatrixParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _coloring(args):
    if args.d < 1 or args.n < 1:
        raise InputError("d and n must be at least 1")
    return Coloring(args.n, args.d)


def _emit(obj, fmt):
    if fmt == "json":
        print(dumps(obj))
        return
    for key in sorted(obj):
        print(f"{key}: {obj[key]}")


def cmd_collinear(args):
    m = _read_matrix(args.matrix)
    v = tropical_rank_le2(m)
    witness = None
    if v.witness:
        rows, cols = v.witness
        witness = {"rows": [r + 1 for r in rows], "cols": [c + 1 for c in cols]}
    _emit({"collinear": v.collinear, "witness": witness}, args.format)
    return EXIT_OK if v.collinear else EXIT_NO


def cmd_canonical_line(args):
    m = _read_matrix(args.matrix)
    pc = PointConfig.from_matrix(m)
    try:
        line = canonical_tree(pc)
    except NotCollinear as exc:
        rows, cols = exc.verdict.witness
        _emit({"collinear": False, "witness": {"rows": [r + 1 for r in rows], "cols": [c + 1 for c in cols]}},
              args.format)
        return EXIT_NO
    out = {
        "tree": tree_to_json(line.tree, line.coloring),
        "basepoint": [format_rat(x) for x in line.basepoint],
        "residual": format_rat(residual(line, pc)),
    }
    _emit(out, args.format)
    return EXIT_OK


def cmd_facets(args):
    c = _coloring(args)
    facets = ct.sort_facets(c)
    if args.format == "json":
        print(dumps({"d": c.d, "n": c.n, "facets": [tree_to_json(t, c)["splits"] for t in facets]}))
    else:
        for t in facets:
            print(" ".join("{" + ",".join(map(str, sorted(s.members))) + "}" for s in t.sorted_splits()))
    return EXIT_OK


def cmd_verify_shelling(args):
    c = _coloring(args)
    cx = ct.build_complex(c)
    out = {"d": c.d, "n": c.n, "rank_formula": ct.homology_rank_formula(c)}
    if not cx.vertices:
        out.update(facet_count=0, shelling="verified", homology_facet_count=0)
        _emit(out, args.format)
        return EXIT_OK
    facets = ct.sort_facets(c)
    if len(facets) > args.cap:
        raise ct.ResourceCapExceeded([len(facets)], args.cap)
    rep = ct.verify_shelling(cx, facets)
    out["facet_count"] = len(facets)
    out["shelling"] = rep.status
    out["homology_facet_count"] = len(ct.homology_facets(rep)) if rep.verified else None
    _emit(out, args.format)
    ok = rep.verified and out["homology_facet_count"] == out["rank_formula"]
    return EXIT_OK if ok else EXIT_NO


def cmd_homology(args):
    c = _coloring(args)
    out = ct.full_report(c, cap=args.cap, coeff=args.coeff, method=args.method)
    _emit(out, args.format)
    return EXIT_OK if out["agree"] else EXIT_NO


def cmd_rank_table(args):
    if args.max_d < 1 or args.max_n < 1:
        raise InputError("table bounds must be at least 1")
    table = [[ct.homology_rank_formula(Coloring(n, d)) for n in range(1, args.max_n + 1)]
             for d in range(1, args.max_d + 1)]
    if args.format == "json":
        print(dumps({"rows": "d", "cols": "n", "table": table}))
    else:
        width = max(len(str(x)) for row in table for x in row) + 1
        print("d\\n".rjust(4) + "".join(str(n).rjust(width) for n in range(1, args.max_n + 1)))
        for d, row in enumerate(table, 1):
            print(str(d).rjust(4) + "".join(str(x).rjust(width) for x in row))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="tropline", description="Tropically collinear points: lines, shelling, homology.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--cap", type=int, default=ct.DEFAULT_FACE_CAP, help="largest number of faces to process")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("collinear", parents=[common], help="decide tropical collinearity of matrix columns")
    s.add_argument("matrix", help="matrix file ('-' for stdin)")
    s.set_defaults(func=cmd_collinear)

    s = sub.add_parser("canonical-line", parents=[common], help="canonical tropical line through matrix columns")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_canonical_line)

    for name, func, text in [
        ("facets", cmd_facets, "facets in shelling order"),
        ("verify-shelling", cmd_verify_shelling, "check the shelling order"),
        ("homology", cmd_homology, "top homology by formula, combs and boundary matrices"),
    ]:
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("d", type=int, help="ambient dimension plus one (number of directions)")
        s.add_argument("n", type=int, help="number of points")
        if name == "homology":
            s.add_argument("--method", choices=["formula", "combs", "boundary", "all"], default="all")
            s.add_argument("--coeff", choices=["rational", "integer"], default="rational")
        s.set_defaults(func=func)

    s = sub.add_parser("rank-table", parents=[common], help="table of top homology ranks")
    s.add_argument("max_d", type=int)
    s.add_argument("max_n", type=int)
    s.set_defaults(func=cmd_rank_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ct.ResourceCapExceeded as exc:
        print(dumps({"error": "resource cap exceeded", "face_counts": exc.face_counts, "cap": exc.cap}))
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
