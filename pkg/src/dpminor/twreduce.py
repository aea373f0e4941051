"""Separator-driven divide and conquer over a tree decomposition.

Every invocation works on an induced subgraph ``H`` with terminals ``R`` and
boundary vertices ``B`` (``R & B`` empty).  Small invocations, ``|R | B| <=
18q``, hand ``H`` to the naive reduction with terminals ``R | B``.  Larger
ones split ``H`` twice, first balancing ``R`` and then, per side, balancing
the boundary accumulated so far, and recurse on the four pieces.  ``q`` is
the bag-size bound ``width + 1`` of the supplied decomposition.

Child witnesses are merged into one witness valid for ``H``.  Vertices shared
between children are always boundary, hence never deleted or absorbed, so the
only interaction is on edges joining two shared vertices.  Those deletions
are hoisted to the front and kept only when every child holding the edge
deletes it; the min-rule merges that follow then reproduce the union exactly.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .graph import DeleteEdge, Graph, Witness, union_graphs
from .naive import ReductionResult, _terminal_set, reduce_naive
from .treedec import (DecompositionError, SeparatorTriple, TreeDecomposition,
                      balanced_separator, separator_violations, validate_td)

STOP_FACTOR = 18


@dataclass
class RecursionNode:
    depth: int
    n_vertices: int
    r_size: int
    b_size: int
    rb_size: int
    leaf: bool
    reduced_size: int = 0
    separator_sizes: tuple = ()
    separator_issues: list = field(default_factory=list)
    children: list = field(default_factory=list)

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "n_vertices": self.n_vertices,
            "R": self.r_size,
            "B": self.b_size,
            "RuB": self.rb_size,
            "leaf": self.leaf,
            "reduced_size": self.reduced_size,
            "separator_sizes": list(self.separator_sizes),
            "separator_issues": list(self.separator_issues),
            "children": [c.to_dict() for c in self.children],
        }


@dataclass
class RecursionStats:
    root: RecursionNode
    q: int
    combined_size: int = 0
    final_size: int = 0

    def nodes(self):
        return list(self.root.walk())

    @property
    def depth(self) -> int:
        return max(n.depth for n in self.root.walk())

    @property
    def leaves(self) -> int:
        return sum(1 for n in self.root.walk() if n.leaf)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "depth": self.depth,
            "nodes": len(self.nodes()),
            "leaves": self.leaves,
            "combined_size": self.combined_size,
            "final_size": self.final_size,
            "tree": self.root.to_dict(),
        }


def check_invariants(stats: RecursionStats) -> list:
    """Per-node invariants of the recursion; an empty list means all hold.

    Checked: boundary size below 6q, two children with at least q terminals
    under every internal node, nodes with fewer than q terminals are leaves,
    the root has no boundary, and every separator was sound.
    """
    q = stats.q
    out = []
    if stats.root.b_size != 0:
        out.append("root has a non-empty boundary")
    for i, node in enumerate(stats.root.walk()):
        tag = f"node#{i}(depth={node.depth})"
        if node.b_size >= 6 * q:
            out.append(f"{tag}: |B|={node.b_size} >= 6q={6 * q}")
        if node.r_size < q and not node.leaf:
            out.append(f"{tag}: |R|={node.r_size} < q but not a leaf")
        if node.leaf != (node.rb_size <= STOP_FACTOR * q):
            out.append(f"{tag}: leaf flag disagrees with the stop condition")
        if not node.leaf:
            big = sum(1 for c in node.children if c.r_size >= q)
            if big < 2:
                out.append(f"{tag}: only {big} children with |R| >= q")
        for issue in node.separator_issues:
            out.append(f"{tag}: {issue}")
    return out


def reduce_tw(g: Graph, R=None, td: Optional[TreeDecomposition] = None,
              q: Optional[int] = None, cleanup: bool = True):
    """Reduce ``g`` by divide and conquer; returns ``(ReductionResult, RecursionStats)``.

    ``td`` defaults to the min-fill heuristic.  ``q`` defaults to
    ``td.width + 1`` and may only be raised.  With ``cleanup`` the combined
    minor gets one final naive pass, removing boundary vertices left at degree
    two; the stats record sizes before and after.
    """
    if td is None:
        from .treedec import heuristic_tree_decomposition
        td = heuristic_tree_decomposition(g)
    verdict = validate_td(g, td)
    if not verdict:
        raise DecompositionError(f"invalid tree decomposition: {verdict.reason}")
    base_q = max(td.width + 1, 1)
    if q is None:
        q = base_q
    elif q < base_q:
        raise ValueError(f"q={q} is below the decomposition's bag size {base_q}")
    terms = frozenset(_terminal_set(g, R))
    combined, witness, root = _recurse(g, terms, frozenset(), td, q, 0)
    stats = RecursionStats(root, q, combined_size=combined.n)
    if cleanup:
        tail = reduce_naive(combined, terms)
        combined = tail.reduced
        witness = witness.then(tail.witness)
    stats.final_size = combined.n
    return ReductionResult(combined, witness, {v: v for v in combined.vertices}), stats


def _recurse(h: Graph, R: frozenset, B: frozenset, td, q, depth):
    node = RecursionNode(depth, h.n, len(R), len(B), len(R | B),
                         leaf=len(R | B) <= STOP_FACTOR * q)
    if node.leaf:
        res = reduce_naive(h, R | B)
        node.reduced_size = res.reduced.n
        return res.reduced, res.witness, node

    first = balanced_separator(h, td, R)
    node.separator_issues.extend(
        f"first separator: {x}" for x in separator_violations(h, first, R, q))
    A1, S, A2 = first
    sizes = [len(S)]
    children = []
    for Ai in (A1, A2):
        side = Ai | S
        U = (B & Ai) | S
        if side:
            hi = h.induced(side)
            second = balanced_separator(hi, td.restrict(side), U)
            node.separator_issues.extend(
                f"second separator: {x}" for x in separator_violations(hi, second, U, q))
        else:
            second = SeparatorTriple(frozenset(), frozenset(), frozenset())
        Ai1, Si, Ai2 = second
        sizes.append(len(Si))
        Ri = R - (S | Si)
        Bi = B | S | Si
        for Aij in (Ai1, Ai2):
            verts = Aij | Si
            sub = _recurse(h.induced(verts), Ri & Aij, Bi & verts,
                           td.restrict(verts), q, depth + 1)
            children.append((verts,) + sub)
    node.separator_sizes = tuple(sizes)
    node.children = [c[3] for c in children]

    combined = None
    for _, gi, _, _ in children:
        combined = gi if combined is None else union_graphs(combined, gi)
    witness = _compose(h, [(verts, w) for verts, _, w, _ in children])
    node.reduced_size = combined.n
    return combined, witness, node


def _compose(h: Graph, parts) -> Witness:
    """Merge child witnesses (each valid on ``h[verts]``) into one valid on ``h``."""
    count = Counter(v for verts, _ in parts for v in verts)
    shared = {v for v, c in count.items() if c > 1}

    def boundary(op):
        return isinstance(op, DeleteEdge) and op.u in shared and op.v in shared

    deleted = [{op.pair for op in w.ops if boundary(op)} for _, w in parts]
    prefix = []
    for u, v, _, _ in h.edges():
        if u in shared and v in shared:
            holders = [i for i, (verts, _) in enumerate(parts) if u in verts and v in verts]
            if all((u, v) in deleted[i] for i in holders):
                prefix.append(DeleteEdge(u, v))
    ops = list(prefix)
    for _, w in parts:
        ops.extend(op for op in w.ops if not boundary(op))
    return Witness(h.fingerprint, tuple(ops))
