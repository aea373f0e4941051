"""Naive reduction: keep canonical terminal paths, then splice out degree-2 non-terminals."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .graph import (ContractEdge, DeleteEdge, DeleteVertex, Graph, Witness,
                    _apply_inplace)
from .paths import shortest_path_tree


@dataclass
class ReductionResult:
    reduced: Graph
    witness: Witness
    vertex_map: dict = field(default_factory=dict)

    @property
    def ops(self):
        return self.witness.ops


def _terminal_set(g: Graph, R) -> set:
    # flagged terminals can never be removed, whatever the caller passes
    out = set(g.terminals)
    if R is not None:
        out |= set(R)
    return out


def restrict_to_shortest_paths(g: Graph, R=None) -> ReductionResult:
    """Drop every vertex and edge that lies on no canonical terminal-pair path.

    ``R`` defaults to the graph's terminal flags and is always extended by them.
    """
    terms = sorted(_terminal_set(g, R))
    keep_v = set(terms)
    keep_e = set()
    for a, s in enumerate(terms):
        tree = shortest_path_tree(g, s)
        for t in terms[a + 1:]:
            if not tree.reachable(t):
                continue
            v = t
            while v != s:
                p = tree.pred[v]
                keep_v.add(v)
                keep_e.add((p, v) if p < v else (v, p))
                v = p
    ops = [DeleteVertex(v) for v in g.vertices if v not in keep_v]
    for u, v, _, _ in g.edges():
        if u in keep_v and v in keep_v and (u, v) not in keep_e:
            ops.append(DeleteEdge(u, v))
    flags, adj = g._mutable()
    for op in ops:
        _apply_inplace(flags, adj, op)
    reduced = Graph(flags, adj, g.mode)
    return ReductionResult(reduced, Witness(g.fingerprint, tuple(ops)),
                           {v: v for v in flags})


def contract_degree2(g: Graph, R=None) -> ReductionResult:
    """Repeatedly splice out the smallest-id non-terminal of degree exactly two.

    The 2-path ``u - v - w`` becomes one edge ``(u, w)`` whose length is the
    2-path sum, min-merged with an existing ``(u, w)`` edge.  Of v's two edges
    the one with the larger index is contracted, so the spliced edge inherits
    the smaller index and canonical tie-breaking is unchanged.
    """
    terms = _terminal_set(g, R)
    flags, adj = g._mutable()
    heap = [v for v in flags if v not in terms and len(adj[v]) == 2]
    heapq.heapify(heap)
    ops = []
    while heap:
        v = heapq.heappop(heap)
        if v not in adj or len(adj[v]) != 2:
            continue
        (a, (_, ia)), (b, (_, ib)) = sorted(adj[v].items())
        s = a if ia > ib else b
        op = ContractEdge(s, v, s)
        _apply_inplace(flags, adj, op)
        ops.append(op)
        for x in (a, b):
            if x not in terms and len(adj[x]) == 2:
                heapq.heappush(heap, x)
    reduced = Graph(flags, adj, g.mode)
    return ReductionResult(reduced, Witness(g.fingerprint, tuple(ops)),
                           {v: v for v in flags})


def reduce_naive(g: Graph, R=None) -> ReductionResult:
    first = restrict_to_shortest_paths(g, R)
    second = contract_degree2(first.reduced, R)
    return ReductionResult(second.reduced, first.witness.then(second.witness),
                           second.vertex_map)
