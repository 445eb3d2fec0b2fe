"""Command-line interface.

Exit codes: 0 success, 1 bad input or usage, 2 refusal / impossible /
verification failure, 3 unknown (budget exhausted or incomplete result).
Data goes to stdout or files, human-readable text to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .constructions import ConstructionError, ConstructionUnknown, pack_max_degree_two, pack_n_plus_one
from .formats import ParseError, parse_graph, read_graph6_lines, to_graph6
from .graph import Graph, girth
from .oracle import FamilyFilter, IncompleteCatalog, brute_force_pack, census, derive_W
from .placement import Placement, PlacementError, verify
from .search import SearchBudget, Verdict

EXIT_OK, EXIT_INPUT, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _say(*parts) -> None:
    print(*parts, file=sys.stderr)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_graph(path: str, fmt: str) -> Graph:
    return parse_graph(_read_text(path), fmt)


def _budget(args) -> SearchBudget:
    return SearchBudget(node_limit=args.node_limit, time_limit=args.budget, symmetry=not args.no_symmetry)


def _emit_placement(p: Placement, output: str | None) -> None:
    if output:
        Path(output).write_text(p.dumps())
    else:
        sys.stdout.write(p.dumps())


# -- pack ----------------------------------------------------------------------


def _pack_theorem(g: Graph, args):
    from .theorem4 import Refusal, pack4

    out = pack4(g, budget=_budget(args), seed=args.seed)
    if out.ok:
        return EXIT_OK, out.placement, "placed by the inductive construction", out.trace
    code = EXIT_UNKNOWN if out.refusal is Refusal.SEARCH_EXHAUSTED else EXIT_NO
    return code, None, f"{out.refusal.value}: {out.detail}", out.trace


def _pack_construction(g: Graph, k: int, args):
    """Direct constructions for degree-two graphs and (n, n+1)-graphs."""
    try:
        if g.max_degree() <= 2:
            return pack_max_degree_two(g, k, seed=args.seed), "maximum degree two"
        if k >= 4 and g.m == g.n + 1 and g.min_degree() >= 2 and girth(g) >= 2 * k + 1:
            return pack_n_plus_one(g, k), "cycles and a double lasso"
    except (ConstructionError, ConstructionUnknown):
        return None, ""
    return None, ""


def _pack_oracle(g: Graph, k: int, args):
    res = brute_force_pack(g, k, _budget(args))
    trace = [f"ORACLE verdict={res.verdict.value} nodes={res.nodes} elapsed={res.elapsed:.2f}s"]
    if res.verdict is Verdict.FOUND:
        return EXIT_OK, res.placement, "found by exhaustive search", trace
    if res.verdict is Verdict.IMPOSSIBLE:
        return EXIT_NO, None, f"Impossible: {res.note or 'complete search found no placement'}", trace
    return EXIT_UNKNOWN, None, "Unknown: search budget exhausted", trace


def cmd_pack(args) -> int:
    g = _load_graph(args.input, args.format)
    k = args.k
    if args.mode == "theorem":
        if k != 4:
            _say("theorem mode handles k = 4 only")
            return EXIT_INPUT
        result = _pack_theorem(g, args)
    elif args.mode == "oracle":
        result = _pack_oracle(g, k, args)
    else:
        result = None
        if k == 4 and g.m == g.n - 1:
            result = _pack_theorem(g, args)
            from .theorem4 import Refusal

            if result[0] != EXIT_OK and result[2].startswith(Refusal.OUTSIDE_SCOPE.value):
                result = None
        if result is None:
            p, how = _pack_construction(g, k, args)
            if p is not None:
                result = (EXIT_OK, p, f"placed by construction ({how})", [f"CONSTRUCTION {how}"])
        if result is None:
            result = _pack_oracle(g, k, args)
    code, placement, verdict, trace = result
    if placement is not None:
        report = verify(g, placement)
        if not report.ok:  # defensive: never emit an invalid certificate
            _say(f"internal error: produced placement fails verification ({report.reason})")
            return EXIT_UNKNOWN
        _emit_placement(placement, args.output)
    _say(f"verdict: {verdict}")
    if not args.quiet:
        for line in trace:
            _say(line)
    return code


# -- verify ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.format)
    try:
        p = Placement.loads(_read_text(args.placement))
        report = verify(g, p)
    except PlacementError as exc:
        _say(f"placement does not fit the graph: {exc}")
        return EXIT_INPUT
    print(json.dumps(report.as_dict(), sort_keys=True))
    if report.ok:
        _say(f"ok: {p.k} edge-disjoint copies in K_{p.n_host}")
        return EXIT_OK
    _say(f"invalid: {report.reason}")
    return EXIT_NO


# -- census and catalog -------------------------------------------------------------


def cmd_census(args) -> int:
    filt = FamilyFilter(
        min_girth=args.min_girth,
        max_degree=args.max_degree,
        connected=True if args.connected else None,
        min_edges=args.q if args.exact_edges else 0,
    )
    source = None
    if args.input:
        source = read_graph6_lines(_read_text(args.input).splitlines())
    elif args.n > 11:
        _say("built-in enumeration stops at n = 11; pass --input with graph6 lines")
        return EXIT_INPUT
    res = census(args.n, args.q, args.k, _budget(args), filt=filt, source=source, jobs=args.jobs)
    for line in res.graph6_lines():
        print(line)
    _say(f"n={res.n} q<={res.q} k={res.k}: {len(res.exceptions)} exception(s), "
         f"{res.placeable} placeable, {len(res.unknown)} unknown, {res.elapsed:.1f}s")
    if not res.complete:
        _say("INCOMPLETE: some graphs were left undecided")
        for g in res.unknown:
            _say(f"unknown {to_graph6(g)}")
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_derive_w(args) -> int:
    progress = _say if args.verbose else None
    try:
        cat = derive_W(args.max_order, _budget(args), min_order=args.min_order, progress=progress)
    except IncompleteCatalog as exc:
        _say(f"INCOMPLETE: {exc}")
        return EXIT_UNKNOWN
    text = cat.dumps()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    _say(f"{len(cat)} exceptional tree(s) of order {args.min_order}..{args.max_order}")
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="packlib", description="Edge-disjoint placements of several copies of a graph.")
    parser.add_argument("--version", action="version", version=f"packlib {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(p, default_time):
        p.add_argument("--budget", type=float, default=default_time, metavar="SECONDS",
                       help="time limit for exhaustive search (default %(default)s)")
        p.add_argument("--node-limit", type=int, default=None, help="node limit for exhaustive search")
        p.add_argument("--no-symmetry", action="store_true", help="disable symmetry breaking")

    p = sub.add_parser("pack", help="find a k-placement or explain why none is produced")
    p.add_argument("input", help="graph file ('-' for stdin)")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--mode", choices=("auto", "theorem", "oracle"), default="auto")
    p.add_argument("--format", choices=("auto", "edges", "graph6"), default="auto")
    p.add_argument("--output", "-o", help="write the placement here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", "-q", action="store_true", help="omit the construction trace")
    search_flags(p, 60.0)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("verify", help="check a placement against a graph")
    p.add_argument("graph")
    p.add_argument("placement")
    p.add_argument("--format", choices=("auto", "edges", "graph6"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="list non-k-placeable graphs of a small family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True, help="maximum number of edges")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--exact-edges", action="store_true", help="only graphs with exactly q edges")
    p.add_argument("--min-girth", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--input", help="graph6 file to filter instead of built-in enumeration")
    p.add_argument("--jobs", type=int, default=1)
    search_flags(p, 600.0)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("derive-w", help="derive the catalog of exceptional trees")
    p.add_argument("--max-order", type=int, default=11)
    p.add_argument("--min-order", type=int, default=8)
    p.add_argument("--output", "-o")
    p.add_argument("--verbose", "-v", action="store_true")
    search_flags(p, 3600.0)
    p.set_defaults(func=cmd_derive_w)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if os.environ.get("PACKLIB_DATA_DIR") and not Path(os.environ["PACKLIB_DATA_DIR"]).is_dir():
        _say(f"PACKLIB_DATA_DIR={os.environ['PACKLIB_DATA_DIR']} is not a directory")
        return EXIT_INPUT
    try:
        return args.func(args)
    except ParseError as exc:
        _say(f"parse error: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        _say(f"cannot read input: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
