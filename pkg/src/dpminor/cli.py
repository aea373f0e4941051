"""Command-line entry point: ``dpminor {generate,reduce,verify,minimize,report}``.

Exit codes: 0 success, 1 a verification verdict failed, 2 usage, input or
parse error.  Every output file is written atomically.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import generators as gen
from .formats import (FormatError, format_graph, format_td, format_witness,
                      read_graph, read_td, read_witness, write_atomic)
from .graph import EXACT, GraphError
from .naive import reduce_naive
from .report import FAMILIES, build_rows, render_table
from .search import SearchBudget, minimize_exact
from .treedec import DecompositionError, heuristic_tree_decomposition
from .twreduce import reduce_tw
from .verify import verify_reduction

log = logging.getLogger("dpminor")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _distinct(*paths):
    seen = set()
    for p in paths:
        if p is None:
            continue
        key = os.path.abspath(p)
        if key in seen:
            raise UsageError(f"path {p} is used twice")
        seen.add(key)


# -- generate --

def _generate(args):
    fam = args.family
    td = None
    if fam == "path":
        g, _ = gen.gen_path(args.n, args.length)
    elif fam == "cbt":
        g, _ = gen.gen_complete_binary_tree(args.depth)
    elif fam == "grid":
        g, _ = gen.gen_grid_lb(args.k, max_k=args.max_k)
    elif fam == "twfamily":
        g, _, td = gen.gen_tw_family(args.p, args.k)
    elif fam == "arrangement":
        g, _ = gen.gen_line_arrangement(args.k, args.seed)
    elif fam == "random":
        g, _ = gen.gen_random_graph(args.n, args.k, args.seed)
    elif fam == "partialktree":
        g, _, td = gen.gen_random_partial_ktree(args.n, args.width, args.k, args.seed)
    else:  # argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    return g, td


def cmd_generate(args) -> int:
    _distinct(args.output, args.td)
    g, td = _generate(args)
    if args.td is not None:
        if td is None:
            td = heuristic_tree_decomposition(g)
        write_atomic(args.td, format_td(td, g.n))
    write_atomic(args.output, format_graph(g, comment=f"generated {args.family}"))
    log.info("wrote %s: %d vertices, %d edges, %d terminals",
             args.output, g.n, g.m, len(g.terminals))
    return EXIT_OK


# -- reduce --

def cmd_reduce(args) -> int:
    _distinct(args.graph, args.output, args.witness, args.stats, args.td)
    g = read_graph(args.graph)
    stats = None
    if args.algorithm == "naive":
        if args.td or args.stats or args.q:
            raise UsageError("--td, --stats and --q only apply to --algorithm tw")
        res = reduce_naive(g)
    else:
        if args.td:
            td = read_td(args.td)
        else:
            td = heuristic_tree_decomposition(g)
            print(f"heuristic tree decomposition: width {td.width}, {len(td.bags)} bags",
                  file=sys.stderr)
        res, stats = reduce_tw(g, td=td, q=args.q, cleanup=not args.no_cleanup)
        log.info("recursion: q=%d depth=%d nodes=%d", stats.q, stats.depth, len(stats.nodes()))
    write_atomic(args.output, format_graph(res.reduced))
    write_atomic(args.witness, format_witness(res.witness))
    if args.stats and stats is not None:
        write_atomic(args.stats, json.dumps(stats.to_dict(), indent=1, sort_keys=True) + "\n")
    print(f"reduced {g.n} -> {res.reduced.n} vertices, {g.m} -> {res.reduced.m} edges, "
          f"{len(res.witness)} ops")
    return EXIT_OK


# -- verify / minimize / report --

def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    g2 = read_graph(args.reduced)
    w = read_witness(args.witness) if args.witness else None
    q = None
    if args.family == "tw":
        q = args.q or heuristic_tree_decomposition(g).width + 1
    report = verify_reduction(g, g2, w, family=args.family, q=q)
    sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_minimize(args) -> int:
    g = read_graph(args.graph)
    if g.mode != EXACT:
        raise UsageError("minimize needs an exact-length graph")
    budget = SearchBudget(max_states=args.max_states, max_vertices=args.max_vertices,
                          time_limit=args.time_limit)
    res = minimize_exact(g, budget=budget, edge_deletions=args.edge_deletions)
    naive = reduce_naive(g).reduced.n
    report = verify_reduction(g, res.best, res.witness)
    print(f"minimum: {res.min_size} vertices ({'exhaustive' if res.exhaustive else 'upper bound'})")
    print(f"naive: {naive} vertices")
    print(f"states: {res.states}")
    sys.stdout.write(report.render())
    if args.output:
        write_atomic(args.output, format_graph(res.best))
    if args.witness_out:
        write_atomic(args.witness_out, format_witness(res.witness))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_report(args) -> int:
    rows = build_rows(args.families or FAMILIES, seed=args.seed)
    text = render_table(rows)
    if args.output:
        write_atomic(args.output, text)
    sys.stdout.write(text)
    ok = all(r.holds and r.exact for r in rows)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser --

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dpminor",
                                description="Distance-preserving minors of weighted terminal graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a benchmark instance")
    g.add_argument("family", choices=["path", "cbt", "grid", "twfamily", "arrangement",
                                      "random", "partialktree"],
                   help="instance family")
    g.add_argument("-o", "--output", required=True, help="graph file to write")
    g.add_argument("--td", help="also write a tree decomposition (heuristic if the family has none)")
    g.add_argument("--n", type=int, default=5, help="edges (path) or vertices (random, partialktree)")
    g.add_argument("--length", default="1", help="edge length for path")
    g.add_argument("--depth", type=int, default=3, help="cbt depth")
    g.add_argument("--k", type=int, default=4, help="terminal count or grid side")
    g.add_argument("--p", type=int, default=4, help="block side for twfamily")
    g.add_argument("--width", type=int, default=2, help="width for partialktree")
    g.add_argument("--max-k", type=int, default=gen.GRID_K_CAP, help="grid side cap")
    g.add_argument("--seed", type=int, default=0, help="64-bit seed for random families")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("reduce", help="compute a distance-preserving minor")
    r.add_argument("-g", "--graph", required=True, help="input graph file")
    r.add_argument("--algorithm", choices=["naive", "tw"], default="naive",
                   help="naive reduction or separator-based divide and conquer")
    r.add_argument("--td", help="tree decomposition for tw (min-fill heuristic when omitted)")
    r.add_argument("--q", type=int, help="override the bag-size bound for tw")
    r.add_argument("--no-cleanup", action="store_true",
                   help="skip the final naive pass after tw")
    r.add_argument("--stats", help="write recursion statistics as JSON (tw only)")
    r.add_argument("-o", "--output", required=True, help="reduced graph file")
    r.add_argument("-w", "--witness", required=True, help="witness file")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="check a reduced graph against its input")
    v.add_argument("-g", "--graph", required=True, help="input graph file")
    v.add_argument("-r", "--reduced", required=True, help="reduced graph file")
    v.add_argument("-w", "--witness", help="witness file to replay")
    v.add_argument("--family", choices=["tree", "general", "tw"], help="size bound to check")
    v.add_argument("--q", type=int, help="bag-size bound for --family tw")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("minimize", help="exhaustive minimum on a tiny exact graph")
    m.add_argument("-g", "--graph", required=True, help="input graph file")
    m.add_argument("--max-states", type=int, default=200_000, help="state budget")
    m.add_argument("--max-vertices", type=int, default=10, help="largest accepted input")
    m.add_argument("--time-limit", type=float, default=120.0, help="seconds")
    m.add_argument("--edge-deletions", action="store_true", help="also branch on edge deletions")
    m.add_argument("-o", "--output", help="write the smallest minor found")
    m.add_argument("--witness-out", help="write its witness")
    m.set_defaults(func=cmd_minimize)

    t = sub.add_parser("report", help="measured sizes next to the known bounds")
    t.add_argument("--families", nargs="*", choices=list(FAMILIES), help="subset of rows")
    t.add_argument("--seed", type=int, default=0, help="seed for random rows")
    t.add_argument("-o", "--output", help="also write the table here")
    t.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must fit in 64 bits", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError, GraphError, DecompositionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
