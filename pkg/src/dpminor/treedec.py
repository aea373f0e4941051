"""Tree decompositions: min-fill heuristic, validation and centroid-bag separators."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional


class DecompositionError(ValueError):
    pass


@dataclass
class TreeDecomposition:
    bags: list
    tree_edges: list = field(default_factory=list)

    def __post_init__(self):
        self.bags = [frozenset(b) for b in self.bags]
        self.tree_edges = [(int(a), int(b)) for a, b in self.tree_edges]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def adjacency(self) -> list:
        adj = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def restrict(self, vertices: Iterable[int]) -> "TreeDecomposition":
        """Same tree, every bag intersected with ``vertices``; stays valid for the induced subgraph."""
        keep = frozenset(vertices)
        return TreeDecomposition([b & keep for b in self.bags], list(self.tree_edges))


@dataclass
class TDVerdict:
    ok: bool
    reason: str = ""
    vertex: Optional[int] = None
    edge: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def validate_td(g, td: TreeDecomposition) -> TDVerdict:
    """Check the decomposition axioms; report the first violation found."""
    nb = len(td.bags)
    for a, b in td.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            return TDVerdict(False, f"bad tree edge ({a},{b})")
    if nb == 0:
        if g.n:
            return TDVerdict(False, "no bags for a non-empty graph", vertex=g.vertices[0])
        return TDVerdict(True)
    if len(td.tree_edges) != nb - 1 or not _connected(nb, td.tree_edges):
        return TDVerdict(False, "bags do not form a tree")
    where = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in g:
                return TDVerdict(False, f"bag {i} holds unknown vertex {v}", vertex=v)
            where.setdefault(v, []).append(i)
    for v in g.vertices:
        if v not in where:
            return TDVerdict(False, f"vertex {v} is in no bag", vertex=v)
    for u, v, _, _ in g.edges():
        if not any(v in td.bags[i] for i in where[u]):
            return TDVerdict(False, f"edge ({u},{v}) is in no bag", edge=(u, v))
    adj = td.adjacency()
    for v in g.vertices:
        occ = set(where[v])
        start = next(iter(occ))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in occ and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != occ:
            return TDVerdict(False, f"bags holding vertex {v} are not connected", vertex=v)
    return TDVerdict(True)


def _connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return len({find(x) for x in range(n)}) == 1


def heuristic_tree_decomposition(g) -> TreeDecomposition:
    """Min-fill elimination ordering, min-degree then smallest id breaking ties."""
    nbrs = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    bag_of = {}
    while nbrs:
        best = None
        for v, nb in nbrs.items():
            fill = 0
            nl = list(nb)
            for a in range(len(nl)):
                na = nbrs[nl[a]]
                for b in range(a + 1, len(nl)):
                    if nl[b] not in na:
                        fill += 1
            cand = (fill, len(nb), v)
            if best is None or cand < best:
                best = cand
        v = best[2]
        nb = nbrs.pop(v)
        for x in nb:
            nbrs[x].discard(v)
            nbrs[x] |= nb - {x}
        bag_of[v] = frozenset(nb | {v})
        order.append(v)
    pos = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    edges = []
    roots = []
    for i, v in enumerate(order):
        later = [u for u in bag_of[v] if u != v]
        if later:
            edges.append((i, pos[min(later, key=pos.__getitem__)]))
        else:
            roots.append(i)
    edges.extend(zip(roots, roots[1:]))
    return _prune(TreeDecomposition(bags, edges))


def _prune(td: TreeDecomposition) -> TreeDecomposition:
    """Merge away bags contained in a neighbouring bag."""
    bags = list(td.bags)
    adj = {i: set() for i in range(len(bags))}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for i in sorted(adj):
            for j in sorted(adj[i]):
                if bags[i] <= bags[j]:
                    for x in adj.pop(i):
                        adj[x].discard(i)
                        if x != j:
                            adj[x].add(j)
                            adj[j].add(x)
                    changed = True
                    break
            if changed:
                break
    keep = sorted(adj)
    renum = {old: new for new, old in enumerate(keep)}
    edges = sorted({(min(renum[a], renum[b]), max(renum[a], renum[b]))
                    for a in keep for b in adj[a]})
    return TreeDecomposition([bags[i] for i in keep], edges)


# -- separators --

@dataclass
class SeparatorTriple:
    A1: frozenset
    S: frozenset
    A2: frozenset

    def __iter__(self):
        return iter((self.A1, self.S, self.A2))


def _pack(components, weight_of):
    """Greedy two-way packing, heaviest component first, each into the lighter side."""
    items = sorted(components, key=lambda c: (-weight_of(c), -len(c), min(c)))
    sides = [[], []]
    load = [(0, 0), (0, 0)]
    for comp in items:
        side = 0 if load[0] <= load[1] else 1
        sides[side].extend(comp)
        load[side] = (load[side][0] + weight_of(comp), load[side][1] + len(comp))
    return frozenset(sides[0]), frozenset(sides[1])


def _components_without(h, removed):
    seen = set(removed)
    comps = []
    for s in h.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in h.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def balanced_separator(h, td: TreeDecomposition, U: Iterable[int]) -> SeparatorTriple:
    """Split ``V(h)`` into ``A1, S, A2`` with no A1-A2 edge and each side holding <= 2/3 of ``U``.

    An empty separator is used when the components of ``h`` already pack
    within the bound.  Otherwise ``S`` is a centroid bag of ``td`` under unit
    weights on ``U``: every component of ``h - S`` then carries at most half
    of ``U``, and greedy packing keeps each side within two thirds.
    """
    if h.n == 0:
        raise DecompositionError("cannot separate an empty graph")
    U = frozenset(U) & frozenset(h.vertices)
    total = len(U)

    def weight(comp):
        return sum(1 for v in comp if v in U)

    comps = _components_without(h, ())
    A1, A2 = _pack(comps, weight)
    if 3 * weight(A1) <= 2 * total and 3 * weight(A2) <= 2 * total:
        return SeparatorTriple(A1, frozenset(), A2)

    S = td.bags[_centroid_bag(td, U)]
    A1, A2 = _pack(_components_without(h, S), weight)
    return SeparatorTriple(A1, S, A2)


def _centroid_bag(td: TreeDecomposition, U: frozenset) -> int:
    nb = len(td.bags)
    w = [0] * nb
    for v in U:
        for i, bag in enumerate(td.bags):
            if v in bag:
                w[i] += 1
                break
    adj = td.adjacency()
    total = sum(w)
    # iterative post-order from bag 0 to get subtree weights
    parent = [-1] * nb
    order = [0]
    seen = {0}
    for x in order:
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
    sub = list(w)
    for x in reversed(order):
        if parent[x] >= 0:
            sub[parent[x]] += sub[x]
    best = None
    for x in order:
        parts = [sub[y] for y in adj[x] if parent[y] == x]
        if parent[x] >= 0:
            parts.append(total - sub[x])
        cand = (max(parts, default=0), x)
        if best is None or cand < best:
            best = cand
    return best[1]


def separator_violations(h, triple: SeparatorTriple, U, q: int) -> list:
    """Soundness checks for a separator; empty list means sound."""
    A1, S, A2 = triple
    out = []
    if A1 & S or A2 & S or A1 & A2:
        out.append("parts overlap")
    if (A1 | S | A2) != frozenset(h.vertices):
        out.append("parts do not cover the graph")
    if len(S) > q:
        out.append(f"|S|={len(S)} exceeds {q}")
    for u in A1:
        for v in h.neighbors(u):
            if v in A2:
                out.append(f"edge ({u},{v}) joins A1 and A2")
                break
    U = frozenset(U)
    bound = Fraction(2, 3) * len(U)
    for name, part in (("A1", A1), ("A2", A2)):
        if len(part & U) > bound:
            out.append(f"|{name} & U|={len(part & U)} exceeds 2/3*{len(U)}")
    return out
