"""Weighted terminal graphs, minor operations and witnesses.

A :class:`Graph` is an immutable simple graph whose vertices are integer ids
carrying a terminal flag and whose edges carry a length and a stable integer
index.  Lengths are either exact (:class:`fractions.Fraction`) or approximate
(``float``); a graph never mixes the two.

Minor operations always return a new graph.  Contraction is length-additive:
when the absorbed endpoint's other edges are re-attached to the survivor they
get the contracted edge's length added, so every edge of the result still
stands for a walk of the same length in the original graph.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Union

EXACT = "exact"
APPROX = "approx"
MODES = (EXACT, APPROX)

Length = Union[Fraction, float]


class GraphError(ValueError):
    pass


class MinorOpError(GraphError):
    pass


class WitnessError(GraphError):
    def __init__(self, message, index=None, op=None):
        super().__init__(message)
        self.index = index
        self.op = op


def as_length(value, mode: str = EXACT) -> Length:
    """Coerce ``value`` to the length type of ``mode``.

    Floats given in exact mode go through their shortest decimal repr, so
    ``0.1`` becomes ``1/10`` rather than its binary expansion.
    """
    if mode == EXACT:
        if isinstance(value, float):
            value = Fraction(repr(value))
        else:
            value = Fraction(value)
    elif mode == APPROX:
        value = float(Fraction(value) if isinstance(value, str) else value)
    else:
        raise GraphError(f"unknown length mode {mode!r}")
    if value < 0:
        raise GraphError(f"negative length {value}")
    return value


def _key(u, v):
    return (u, v) if u < v else (v, u)


# -- minor operations --------------------------------------------------------

@dataclass(frozen=True)
class DeleteVertex:
    v: int

    def __str__(self):
        return f"dv {self.v}"


@dataclass(frozen=True)
class DeleteEdge:
    u: int
    v: int

    @property
    def pair(self):
        return _key(self.u, self.v)

    def __str__(self):
        return f"de {self.u} {self.v}"


@dataclass(frozen=True)
class ContractEdge:
    u: int
    v: int
    survivor: int

    @property
    def pair(self):
        return _key(self.u, self.v)

    @property
    def absorbed(self):
        return self.v if self.survivor == self.u else self.u

    def __str__(self):
        return f"ce {self.u} {self.v} {self.survivor}"


MinorOp = Union[DeleteVertex, DeleteEdge, ContractEdge]


@dataclass(frozen=True)
class Witness:
    """Ordered minor operations, bound to the fingerprint of the graph they start from."""

    fingerprint: str
    ops: tuple = ()

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def then(self, other: "Witness") -> "Witness":
        return Witness(self.fingerprint, self.ops + tuple(other.ops))


# -- graph -------------------------------------------------------------------

class Graph:
    """Immutable weighted simple graph with terminal flags.

    ``flags`` maps vertex id -> terminal flag, ``adj`` maps vertex id ->
    {neighbour: (length, edge index)} and must be symmetric.  The constructor
    takes ownership of both dicts without copying; use :func:`build_graph` or
    :meth:`from_edges` for validated construction.
    """

    def __init__(self, flags: dict, adj: dict, mode: str = EXACT):
        if mode not in MODES:
            raise GraphError(f"unknown length mode {mode!r}")
        self._flags = flags
        self._adj = adj
        self.mode = mode

    @classmethod
    def from_edges(cls, vertices: Iterable[int], terminals: Iterable[int],
                   edges: Iterable, mode: str = EXACT) -> "Graph":
        """Build from explicit ``(u, v, length, index)`` tuples.

        Parallel edges collapse to the minimum length and the smaller index.
        """
        flags = {int(v): False for v in vertices}
        for t in terminals:
            if t not in flags:
                raise GraphError(f"terminal {t} is not a vertex")
            flags[t] = True
        adj = {v: {} for v in flags}
        seen = set()
        for u, v, length, index in edges:
            if u not in flags or v not in flags:
                raise GraphError(f"edge ({u},{v}) references an unknown vertex")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            length = as_length(length, mode)
            cur = adj[u].get(v)
            if cur is None:
                if index in seen:
                    raise GraphError(f"duplicate edge index {index}")
                new = (length, index)
            else:
                new = (min(cur[0], length), min(cur[1], index))
            seen.add(index)
            adj[u][v] = adj[v][u] = new
        return cls(flags, adj, mode)

    # -- queries --

    @property
    def vertices(self) -> list:
        return sorted(self._flags)

    @cached_property
    def terminals(self) -> frozenset:
        return frozenset(v for v, t in self._flags.items() if t)

    def is_terminal(self, v) -> bool:
        return self._flags[v]

    def __contains__(self, v) -> bool:
        return v in self._flags

    def __len__(self) -> int:
        return len(self._flags)

    @property
    def n(self) -> int:
        return len(self._flags)

    @cached_property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def neighbors(self, v) -> dict:
        """Read-only view: neighbour -> (length, index)."""
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def edge(self, u, v):
        """``(length, index)`` of edge ``{u, v}`` or ``None``."""
        nb = self._adj.get(u)
        if nb is None:
            return None
        return nb.get(v)

    def has_edge(self, u, v) -> bool:
        return self.edge(u, v) is not None

    def edges(self) -> list:
        """All edges as ``(u, v, length, index)`` with ``u < v``, in index order."""
        return list(self._edge_list)

    @cached_property
    def _edge_list(self) -> tuple:
        out = [(u, v, l, i) for u, nb in self._adj.items()
               for v, (l, i) in nb.items() if u < v]
        out.sort(key=lambda e: e[3])
        return tuple(out)

    @cached_property
    def max_index(self) -> int:
        return max((e[3] for e in self._edge_list), default=0)

    @cached_property
    def scale(self) -> int:
        """Common denominator turning every exact length into an integer."""
        if self.mode != EXACT:
            return 1
        return lcm(1, *(e[2].denominator for e in self._edge_list))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        missing = keep - self._flags.keys()
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)[:5]}")
        flags = {v: self._flags[v] for v in keep}
        adj = {v: {u: e for u, e in self._adj[v].items() if u in keep} for v in keep}
        return Graph(flags, adj, self.mode)

    def components(self) -> list:
        """Connected components as sorted lists, ordered by smallest vertex."""
        seen = set()
        out = []
        for s in sorted(self._flags):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    # -- identity --

    def _canonical_lines(self) -> Iterator[str]:
        yield f"mode {self.mode}"
        for v in sorted(self._flags):
            yield f"v {v} {int(self._flags[v])}"
        for u, v, l, i in self._edge_list:
            text = str(l) if self.mode == EXACT else l.hex()
            yield f"e {u} {v} {text} {i}"

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for line in self._canonical_lines():
            h.update(line.encode())
            h.update(b"\n")
        return h.hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.mode == other.mode and self._flags == other._flags
                and self._adj == other._adj)

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, k={len(self.terminals)}, mode={self.mode})"

    def _mutable(self):
        return dict(self._flags), {v: dict(nb) for v, nb in self._adj.items()}


def build_graph(n: int, terminals: Iterable[int], edges: Iterable,
                mode: str = EXACT) -> Graph:
    """Graph on vertices ``1..n`` from ``(u, v, length)`` triples.

    Edge indices follow input order starting at 1; parallel inputs collapse to
    the minimum length and keep the first index.
    """
    n = int(n)
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    indexed = []
    for i, (u, v, length) in enumerate(edges, start=1):
        for x in (u, v):
            if not 1 <= x <= n:
                raise GraphError(f"vertex id {x} out of range 1..{n}")
        indexed.append((u, v, length, i))
    for t in terminals:
        if not 1 <= t <= n:
            raise GraphError(f"terminal {t} is not a vertex")
    return Graph.from_edges(range(1, n + 1), terminals, indexed, mode)


# -- applying operations -----------------------------------------------------

def _apply_inplace(flags: dict, adj: dict, op) -> None:
    if isinstance(op, DeleteVertex):
        v = op.v
        if v not in flags:
            raise MinorOpError(f"{op}: no vertex {v}")
        if flags[v]:
            raise MinorOpError(f"{op}: vertex {v} is a terminal")
        for u in adj[v]:
            del adj[u][v]
        del adj[v]
        del flags[v]
    elif isinstance(op, DeleteEdge):
        u, v = op.u, op.v
        if u not in adj or v not in adj[u]:
            raise MinorOpError(f"{op}: no edge ({u},{v})")
        del adj[u][v]
        del adj[v][u]
    elif isinstance(op, ContractEdge):
        u, v, s = op.u, op.v, op.survivor
        if u not in adj or v not in adj[u]:
            raise MinorOpError(f"{op}: no edge ({u},{v})")
        if s not in (u, v):
            raise MinorOpError(f"{op}: survivor {s} is not an endpoint")
        if flags[u] and flags[v]:
            raise MinorOpError(f"{op}: both endpoints are terminals")
        other = v if s == u else u
        if flags[other]:
            raise MinorOpError(f"{op}: survivor must be the terminal endpoint")
        base, _ = adj[s].pop(other)
        del adj[other][s]
        for x, (length, index) in adj.pop(other).items():
            del adj[x][other]
            cand = length + base
            cur = adj[s].get(x)
            new = (cand, index) if cur is None else (min(cur[0], cand), min(cur[1], index))
            adj[s][x] = adj[x][s] = new
        absorbed_flag = flags.pop(other)
        flags[s] = flags[s] or absorbed_flag
    else:
        raise MinorOpError(f"not a minor operation: {op!r}")


def apply_minor_op(g: Graph, op) -> Graph:
    flags, adj = g._mutable()
    _apply_inplace(flags, adj, op)
    return Graph(flags, adj, g.mode)


def apply_ops(g: Graph, ops: Iterable) -> Graph:
    """Apply ``ops`` in order without fingerprint checks."""
    flags, adj = g._mutable()
    for i, op in enumerate(ops):
        try:
            _apply_inplace(flags, adj, op)
        except MinorOpError as exc:
            raise WitnessError(f"op #{i} failed: {exc}", index=i, op=op) from exc
    return Graph(flags, adj, g.mode)


def replay_witness(g: Graph, w: Witness) -> Graph:
    if w.fingerprint != g.fingerprint:
        raise WitnessError(
            f"witness fingerprint {w.fingerprint[:12]}... does not match graph "
            f"{g.fingerprint[:12]}...")
    return apply_ops(g, w.ops)


def union_graphs(h1: Graph, h2: Graph) -> Graph:
    """Union with shared vertices merged and overlapping edges at the minimum length.

    Overlapping edges keep the smaller index, the same rule contraction uses
    for parallel edges.
    """
    if h1.mode != h2.mode:
        raise GraphError("cannot union graphs with different length modes")
    flags = dict(h1._flags)
    for v, t in h2._flags.items():
        if v in flags and flags[v] != t:
            raise GraphError(f"terminal flag conflict on vertex {v}")
        flags[v] = t
    adj = {v: dict(nb) for v, nb in h1._adj.items()}
    for v in h2._flags:
        adj.setdefault(v, {})
    for u, nb in h2._adj.items():
        for v, (l, i) in nb.items():
            cur = adj[u].get(v)
            adj[u][v] = (l, i) if cur is None else (min(cur[0], l), min(cur[1], i))
    return Graph(flags, adj, h1.mode)
