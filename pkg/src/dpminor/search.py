"""Exhaustive search for the smallest distance-preserving minor of a tiny graph.

Breadth-first over minor-operation sequences, one vertex removed per level.
Two facts keep the frontier small:

* No operation ever shortens a distance between surviving vertices, so a
  state that already stretches a terminal pair can be dropped with its whole
  subtree.
* Keeping an edge never hurts: a supergraph with pointwise shorter edges
  dominates under every later operation.  Edge deletions are therefore off
  by default; they cannot lower the minimum.

States are deduplicated on a canonical encoding that fixes terminal ids and
relabels non-terminals (colour refinement, then the best of all orderings
inside tied colour classes when that is cheap enough).
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import factorial
from typing import Optional

from .graph import (EXACT, ContractEdge, DeleteEdge, DeleteVertex, Graph,
                    GraphError, Witness, _apply_inplace)
from .paths import apsp

MAX_ORDERINGS = 5040


@dataclass
class SearchBudget:
    max_states: int = 200_000
    max_vertices: int = 10
    time_limit: float = 120.0

    def __post_init__(self):
        if self.max_states <= 0 or self.max_vertices <= 0 or self.time_limit <= 0:
            raise ValueError("search budget values must be positive")


@dataclass
class MinimizeResult:
    min_size: int
    witness: Witness
    exhaustive: bool
    states: int
    best: Graph


def _refine(g: Graph):
    colour = {v: (0, v) if g.is_terminal(v) else (1,) for v in g.vertices}
    classes = len(set(colour.values()))
    while True:
        sig = {v: (colour[v], tuple(sorted((colour[u], l) for u, (l, _) in g.neighbors(v).items())))
               for v in g.vertices}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in g.vertices}
        n_classes = len(ranks)
        colour = new
        if n_classes == classes:
            return colour
        classes = n_classes


def canonical_encoding(g: Graph) -> tuple:
    """Hashable encoding equal for graphs isomorphic under a terminal-fixing relabelling."""
    terms = sorted(g.terminals)
    others = [v for v in g.vertices if not g.is_terminal(v)]
    colour = _refine(g)
    groups = {}
    for v in others:
        groups.setdefault(colour[v], []).append(v)
    ordered = [groups[c] for c in sorted(groups)]
    n_orders = 1
    for grp in ordered:
        n_orders *= factorial(len(grp))

    def encode(order):
        label = {t: (0, t) for t in terms}
        label.update({v: (1, i) for i, v in enumerate(order)})
        edges = []
        for u, v, l, _ in g.edges():
            a, b = label[u], label[v]
            edges.append((a, b, l) if a < b else (b, a, l))
        edges.sort()
        return (tuple(terms), len(order), tuple(edges))

    if n_orders > MAX_ORDERINGS:
        # sound fallback: no relabelling at all
        return ("raw",) + encode(sorted(others))
    best = None
    for combo in itertools.product(*(itertools.permutations(grp) for grp in ordered)):
        enc = encode([v for grp in combo for v in grp])
        if best is None or enc < best:
            best = enc
    return best


def _successors(g: Graph, terms, edge_deletions):
    for v in g.vertices:
        if v not in terms:
            yield DeleteVertex(v)
    for u, v, _, _ in g.edges():
        if u in terms and v in terms:
            continue
        if u in terms:
            yield ContractEdge(u, v, u)
        elif v in terms:
            yield ContractEdge(u, v, v)
        else:
            yield ContractEdge(u, v, u)
            yield ContractEdge(u, v, v)
    if edge_deletions:
        for u, v, _, _ in g.edges():
            yield DeleteEdge(u, v)


def minimize_exact(g: Graph, R=None, budget: Optional[SearchBudget] = None,
                   edge_deletions: bool = False) -> MinimizeResult:
    """Smallest vertex count of a distance-preserving minor reachable from ``g``.

    ``R`` extends the graph's own terminal flags.  When the budget runs out the
    result carries ``exhaustive=False`` and ``min_size`` is only an upper bound.
    """
    budget = budget or SearchBudget()
    if g.mode != EXACT:
        raise GraphError("exhaustive search needs exact lengths")
    if g.n > budget.max_vertices:
        raise GraphError(f"graph has {g.n} vertices, budget allows {budget.max_vertices}")
    terms = set(g.terminals) | set(R or ())
    tlist = sorted(terms)
    target = apsp(g, tlist).rows

    def preserves(h):
        return apsp(h, tlist).rows == target

    deadline = time.monotonic() + budget.time_limit
    start_key = canonical_encoding(g)
    parent = {start_key: None}
    best_key, best_graph = start_key, g
    frontier = [(start_key, g)]
    exhaustive = True
    while frontier and exhaustive:
        nxt = []
        for key, h in frontier:
            for op in _successors(h, terms, edge_deletions):
                flags, adj = h._mutable()
                _apply_inplace(flags, adj, op)
                child = Graph(flags, adj, g.mode)
                ckey = canonical_encoding(child)
                if ckey in parent:
                    continue
                if not preserves(child):
                    parent[ckey] = False
                    continue
                parent[ckey] = (key, op)
                nxt.append((ckey, child))
                if child.n < best_graph.n:
                    best_key, best_graph = ckey, child
                if len(parent) >= budget.max_states or time.monotonic() > deadline:
                    exhaustive = False
                    break
            if not exhaustive:
                break
        frontier = nxt
    ops = []
    key = best_key
    while parent[key] is not None:
        key, op = parent[key]
        ops.append(op)
    ops.reverse()
    return MinimizeResult(best_graph.n, Witness(g.fingerprint, tuple(ops)),
                          exhaustive, len(parent), best_graph)
