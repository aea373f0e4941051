"""Canonical shortest paths and terminal distance matrices.

Ties between equal-length paths are broken by an exact perturbation: a path
using edge set P is ranked by ``(length, sum(2**-index(e) for e in P))``,
smaller first.  The perturbation is carried as an integer bitmask scaled by
``2**max_index`` so Dijkstra compares plain ints.  Exact lengths are scaled
by the graph's common denominator for the same reason.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .graph import EXACT, Graph, GraphError, Length


@dataclass(frozen=True)
class PathResult:
    total: Length
    vertices: tuple
    edge_indices: frozenset
    perturbation_key: Fraction


@dataclass
class ShortestPathTree:
    """Canonical shortest-path tree rooted at ``source``."""

    graph: Graph
    source: int
    dist: dict   # vertex -> scaled (length, key)
    pred: dict   # vertex -> predecessor (source absent)

    def reachable(self, v) -> bool:
        return v in self.dist

    def distance(self, v) -> Optional[Length]:
        d = self.dist.get(v)
        if d is None:
            return None
        return _unscale(self.graph, d[0])

    def path(self, v) -> Optional[list]:
        if v not in self.dist:
            return None
        out = [v]
        while v != self.source:
            v = self.pred[v]
            out.append(v)
        out.reverse()
        return out


def _unscale(g: Graph, d):
    if g.mode == EXACT:
        return Fraction(d, g.scale)
    return d


def _scaled_adjacency(g: Graph) -> dict:
    # cached on the instance; graphs are immutable
    cache = g.__dict__.get("_scaled_adj")
    if cache is not None:
        return cache
    top = g.max_index
    scale = g.scale
    exact = g.mode == EXACT
    adj = {}
    for v in g.vertices:
        row = []
        for u, (l, i) in g.neighbors(v).items():
            w = int(l * scale) if exact else l
            row.append((u, w, 1 << (top - i)))
        adj[v] = row
    g.__dict__["_scaled_adj"] = adj
    return adj


def shortest_path_tree(g: Graph, source: int) -> ShortestPathTree:
    if source not in g:
        raise GraphError(f"unknown vertex {source}")
    adj = _scaled_adjacency(g)
    zero = 0 if g.mode == EXACT else 0.0
    dist = {source: (zero, 0)}
    pred = {}
    done = set()
    heap = [(zero, 0, source)]
    while heap:
        d, k, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for u, w, bit in adj[v]:
            if u in done:
                continue
            cand = (d + w, k + bit)
            cur = dist.get(u)
            if cur is None or cand < cur:
                dist[u] = cand
                pred[u] = v
                heapq.heappush(heap, (cand[0], cand[1], u))
    return ShortestPathTree(g, source, dist, pred)


def canonical_shortest_path(g: Graph, u: int, v: int) -> Optional[PathResult]:
    """The unique minimum ``(length, perturbation)`` path from ``u`` to ``v``, or None."""
    if v not in g:
        raise GraphError(f"unknown vertex {v}")
    tree = shortest_path_tree(g, u)
    seq = tree.path(v)
    if seq is None:
        return None
    indices = frozenset(g.edge(a, b)[1] for a, b in zip(seq, seq[1:]))
    key = sum((Fraction(1, 2 ** i) for i in indices), Fraction(0))
    return PathResult(tree.distance(v), tuple(seq), indices, key)


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric distances over ``vertices``; ``None`` marks a disconnected pair."""

    vertices: tuple
    rows: tuple

    def index(self, v) -> int:
        return self.vertices.index(v)

    def __getitem__(self, pair):
        u, v = pair
        return self.rows[self.vertices.index(u)][self.vertices.index(v)]

    def pairs(self):
        """Yield ``(u, v, d)`` for every unordered pair ``u < v`` (by position)."""
        n = len(self.vertices)
        for a in range(n):
            for b in range(a + 1, n):
                yield self.vertices[a], self.vertices[b], self.rows[a][b]


def apsp(g: Graph, sources: Iterable[int]) -> DistanceMatrix:
    """Exact distances among ``sources``, one Dijkstra per source."""
    srcs = tuple(sorted(set(sources)))
    for s in srcs:
        if s not in g:
            raise GraphError(f"unknown vertex {s}")
    rows = []
    for s in srcs:
        tree = shortest_path_tree(g, s)
        rows.append(tuple(tree.distance(t) for t in srcs))
    return DistanceMatrix(srcs, tuple(rows))
