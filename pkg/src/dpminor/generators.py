"""Instance generators: paths, binary trees, weighted grids, grid families,
line arrangements, and seeded random graphs."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .graph import APPROX, EXACT, Graph, GraphError, as_length
from .treedec import TreeDecomposition

GRID_K_CAP = 16
ARRANGEMENT_DENOMINATOR = 2 ** 20


def gen_path(n: int, length=1):
    """Path ``1 - 2 - ... - n+1`` of ``n`` equal edges; the endpoints are terminals."""
    if n < 1:
        raise GraphError("a path needs at least one edge")
    length = as_length(length)
    edges = [(i, i + 1, length, i) for i in range(1, n + 1)]
    g = Graph.from_edges(range(1, n + 2), (1, n + 1), edges)
    return g, g.terminals


def gen_complete_binary_tree(depth: int):
    """Heap-numbered complete binary tree (root 1, children 2v and 2v+1), unit lengths, leaves terminal."""
    if depth < 1:
        raise GraphError("depth must be at least 1")
    n = 2 ** (depth + 1) - 1
    edges = [(c // 2, c, 1, c - 1) for c in range(2, n + 1)]
    leaves = range(2 ** depth, n + 1)
    g = Graph.from_edges(range(1, n + 1), leaves, edges)
    return g, g.terminals


def grid_vertex(k: int, x: int, y: int) -> int:
    return y * k + x + 1


def grid_vertical_length(k: int, x: int) -> Fraction:
    return 1 + Fraction(1, 2 ** (x * x) * k)


def grid_distance(k: int, x: int, y: int) -> Fraction:
    """Closed form distance from ``(0, y)`` to ``(x, x)`` in the weighted grid."""
    return 2 * x - y + Fraction(x - y, 2 ** (x * x) * k)


def gen_grid_lb(k: int, mode: str = EXACT, max_k: int = GRID_K_CAP):
    """k x k grid with unit horizontal edges and column-dependent vertical edges.

    The vertical edge in column ``x`` has length ``1 + 1/(2**(x*x) * k)``.
    Terminals are ``(0, y)`` for ``y < k/2`` and ``(x, x)`` for ``x >= k/2``.
    """
    if mode != EXACT:
        raise GraphError("the weighted grid needs exact lengths")
    if k < 4 or k % 2:
        raise GraphError("k must be even and at least 4")
    if k > max_k:
        raise GraphError(f"k={k} exceeds the cap {max_k}; raise max_k to allow it")
    edges = []
    for y in range(k):
        for x in range(k - 1):
            edges.append((grid_vertex(k, x, y), grid_vertex(k, x + 1, y), Fraction(1)))
    for x in range(k):
        vlen = grid_vertical_length(k, x)
        for y in range(k - 1):
            edges.append((grid_vertex(k, x, y), grid_vertex(k, x, y + 1), vlen))
    R = [grid_vertex(k, 0, y) for y in range(k // 2)]
    R += [grid_vertex(k, x, x) for x in range(k // 2, k)]
    g = Graph.from_edges(range(1, k * k + 1), R,
                         [(u, v, l, i) for i, (u, v, l) in enumerate(edges, start=1)])
    return g, g.terminals


def grid_terminal_sets(k: int):
    """``(R1, R2)`` as lists of ``((x, y), vertex id)``."""
    R1 = [((0, y), grid_vertex(k, 0, y)) for y in range(k // 2)]
    R2 = [((x, x), grid_vertex(k, x, x)) for x in range(k // 2, k)]
    return R1, R2


def _grid_column_sweep(k: int, offset: int = 0) -> list:
    order = [grid_vertex(k, x, y) + offset for x in range(k) for y in range(k)]
    return [frozenset(order[i:i + k + 1]) for i in range(len(order) - k)]


def gen_tw_family(p: int, k: int):
    """``k/p`` disjoint weighted ``p x p`` grids with a width-``p`` decomposition.

    Returns ``(graph, terminals, decomposition)``.  Block ``b`` uses ids
    ``b*p*p + 1 .. (b+1)*p*p``; each block is decomposed by a column sweep and
    the blocks' bag paths are chained end to end.
    """
    if p < 4 or p % 2:
        raise GraphError("p must be even and at least 4")
    if k < p or k % p:
        raise GraphError("k must be a positive multiple of p")
    block, _ = gen_grid_lb(p)
    blocks = k // p
    size = p * p
    edges = []
    terminals = []
    bags = []
    idx = 0
    for b in range(blocks):
        off = b * size
        for u, v, l, _ in block.edges():
            idx += 1
            edges.append((u + off, v + off, l, idx))
        terminals.extend(t + off for t in block.terminals)
        bags.extend(_grid_column_sweep(p, off))
    g = Graph.from_edges(range(1, blocks * size + 1), terminals, edges)
    td = TreeDecomposition(bags, [(i, i + 1) for i in range(len(bags) - 1)])
    return g, g.terminals, td


# -- line arrangement --

@dataclass
class Arrangement:
    graph: Graph
    terminals: frozenset
    coords: dict          # vertex id -> (Fraction x, Fraction y)
    segments: list        # (family, vertex ids along the segment in order)
    cross_vertices: frozenset
    seed: int
    attempts: int


class _Degenerate(Exception):
    pass


def _intersect(p, r, q, s):
    """Interior intersection of segments p + t*r and q + u*s, 0 < t, u < 1."""
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        return None
    qp = (q[0] - p[0], q[1] - p[1])
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def _arrangement_attempt(k, rng, D):
    m = k // 4

    def side():
        return sorted(Fraction(a, D) for a in rng.sample(range(1, D), m))

    top = [(x, Fraction(1)) for x in side()]
    bottom = [(x, Fraction(0)) for x in side()]
    left = [(Fraction(0), y) for y in side()]
    right = [(Fraction(1), y) for y in side()]
    points = top + bottom + left + right
    coords = {i: pt for i, pt in enumerate(points, start=1)}
    tid = {pt: i for i, pt in coords.items()}
    segs = [("TB", a, b) for a in top for b in bottom]
    segs += [("LR", a, b) for a in left for b in right]
    on_seg = [[(Fraction(0), tid[a]), (Fraction(1), tid[b])] for _, a, b in segs]
    hits = {}
    for i in range(len(segs)):
        fi, a, b = segs[i]
        r = (b[0] - a[0], b[1] - a[1])
        for j in range(i + 1, len(segs)):
            fj, c, d = segs[j]
            s = (d[0] - c[0], d[1] - c[1])
            res = _intersect(a, r, c, s)
            if res is None:
                continue
            t, _ = res
            pt = (a[0] + t * r[0], a[1] + t * r[1])
            hits.setdefault(pt, []).append((i, j, fi != fj))
    for pt, pairs in hits.items():
        if len(pairs) > 1:
            raise _Degenerate(pt)
    next_id = len(points) + 1
    cross = set()
    for pt in sorted(hits):
        (i, j, mixed), = hits[pt]
        coords[next_id] = pt
        for sidx in (i, j):
            _, a, b = segs[sidx]
            r = (b[0] - a[0], b[1] - a[1])
            t = (pt[0] - a[0]) / r[0] if r[0] else (pt[1] - a[1]) / r[1]
            on_seg[sidx].append((t, next_id))
        if mixed:
            cross.add(next_id)
        next_id += 1
    edges = []
    segments = []
    for (fam, _, _), pts in zip(segs, on_seg):
        pts.sort()
        ids = [v for _, v in pts]
        segments.append((fam, ids))
        for u, v in zip(ids, ids[1:]):
            (x1, y1), (x2, y2) = coords[u], coords[v]
            edges.append((u, v, sqrt(float((x2 - x1) ** 2 + (y2 - y1) ** 2))))
    g = Graph.from_edges(coords, range(1, len(points) + 1),
                         [(u, v, l, i) for i, (u, v, l) in enumerate(edges, start=1)],
                         mode=APPROX)
    return g, coords, segments, frozenset(cross)


def line_arrangement(k: int, seed: int, denominator: int = ARRANGEMENT_DENOMINATOR,
                     max_attempts: int = 64) -> Arrangement:
    """Random terminals on the sides of the unit square joined by straight segments.

    ``k // 4`` rational points per side; every top point is joined to every
    bottom point and every left point to every right point.  Vertices are the
    terminals plus all pairwise segment crossings, computed exactly; edge
    lengths are the Euclidean lengths as floats.  Draws with three concurrent
    segments are rejected and redrawn from a derived seed.
    """
    if k < 8:
        raise GraphError("the arrangement needs k >= 8")
    for attempt in range(max_attempts):
        rng = random.Random((int(seed) << 8) + attempt)
        try:
            g, coords, segments, cross = _arrangement_attempt(k, rng, denominator)
        except _Degenerate:
            continue
        return Arrangement(g, g.terminals, coords, segments, cross, seed, attempt + 1)
    raise GraphError(f"no generic arrangement after {max_attempts} attempts")


def gen_line_arrangement(k: int, seed: int):
    arr = line_arrangement(k, seed)
    return arr.graph, arr.terminals


# -- random instances --

def _random_length(rng, max_num, max_den):
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def gen_random_graph(n: int, k: int, seed: int, extra_edges: int | None = None,
                     max_num: int = 20, max_den: int = 4):
    """Connected random graph: random recursive tree plus ``extra_edges`` chords.

    Lengths are rationals ``a/b`` with ``1 <= a <= max_num``, ``1 <= b <= max_den``.
    """
    if n < 1 or not 0 <= k <= n:
        raise GraphError("need n >= 1 and 0 <= k <= n")
    rng = random.Random(seed)
    if extra_edges is None:
        extra_edges = n // 2
    pairs = {}
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        pairs[(u, v)] = _random_length(rng, max_num, max_den)
    room = n * (n - 1) // 2 - len(pairs)
    for _ in range(min(extra_edges, room)):
        while True:
            u, v = sorted(rng.sample(range(1, n + 1), 2))
            if (u, v) not in pairs:
                break
        pairs[(u, v)] = _random_length(rng, max_num, max_den)
    edges = [(u, v, l, i) for i, ((u, v), l) in enumerate(pairs.items(), start=1)]
    R = rng.sample(range(1, n + 1), k)
    g = Graph.from_edges(range(1, n + 1), R, edges)
    return g, g.terminals


def gen_random_tree(n: int, seed: int, max_num: int = 10, max_den: int = 1):
    """Random recursive tree with all leaves as terminals."""
    rng = random.Random(seed)
    edges = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.append((u, v, _random_length(rng, max_num, max_den), v - 1))
    deg = {v: 0 for v in range(1, n + 1)}
    for u, v, _, _ in edges:
        deg[u] += 1
        deg[v] += 1
    leaves = [v for v, d in deg.items() if d <= 1]
    g = Graph.from_edges(range(1, n + 1), leaves, edges)
    return g, g.terminals


def gen_random_partial_ktree(n: int, width: int, k: int, seed: int,
                             keep: float = 0.7, max_num: int = 20, max_den: int = 4):
    """Random partial ``width``-tree with its decomposition.

    Each new vertex joins a random ``width``-subset of an existing bag and
    keeps each of those edges with probability ``keep`` (at least one).
    Returns ``(graph, terminals, decomposition)``.
    """
    if width < 1 or n < width + 1 or not 0 <= k <= n:
        raise GraphError("need width >= 1, n > width and 0 <= k <= n")
    rng = random.Random(seed)
    first = list(range(1, width + 2))
    bags = [frozenset(first)]
    tree = []
    pairs = {}
    for a in first:
        for b in first:
            if a < b and rng.random() < keep:
                pairs[(a, b)] = _random_length(rng, max_num, max_den)
    for a, b in zip(first, first[1:]):
        pairs.setdefault((a, b), _random_length(rng, max_num, max_den))
    for v in range(width + 2, n + 1):
        host = rng.randrange(len(bags))
        clique = rng.sample(sorted(bags[host]), width)
        chosen = [u for u in clique if rng.random() < keep] or [rng.choice(clique)]
        for u in chosen:
            pairs[(u, v)] = _random_length(rng, max_num, max_den)
        bags.append(frozenset(clique) | {v})
        tree.append((host, len(bags) - 1))
    edges = [(u, v, l, i) for i, ((u, v), l) in enumerate(pairs.items(), start=1)]
    R = rng.sample(range(1, n + 1), k)
    g = Graph.from_edges(range(1, n + 1), R, edges)
    return g, g.terminals, TreeDecomposition(bags, tree)
