from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dpminor.generators import gen_complete_binary_tree, gen_path, gen_random_tree
from dpminor.graph import APPROX, Graph, GraphError, build_graph, replay_witness
from dpminor.naive import reduce_naive
from dpminor.search import SearchBudget, canonical_encoding, minimize_exact
from oracles import small_graphs, terminal_distances


def relabel(g, perm):
    """Apply ``perm`` to vertex ids (terminals must map to themselves)."""
    return Graph.from_edges([perm[v] for v in g.vertices], [perm[t] for t in g.terminals],
                            [(perm[u], perm[v], l, i) for u, v, l, i in g.edges()])


def star():
    return build_graph(4, [2, 3, 4], [(1, 2, 1), (1, 3, 1), (1, 4, 1)])


def test_cbt_depth2():
    g, _ = gen_complete_binary_tree(2)
    res = minimize_exact(g)
    assert res.exhaustive and res.min_size == 6


def test_star():
    res = minimize_exact(star())
    assert res.exhaustive and res.min_size == 4


def test_path5():
    g, _ = gen_path(5)
    res = minimize_exact(g)
    assert res.exhaustive and res.min_size == 2
    h = replay_witness(g, res.witness)
    assert h == res.best and h.edge(1, 6)[0] == 5


def test_approx_rejected():
    g = build_graph(2, [1, 2], [(1, 2, 1)], mode=APPROX)
    with pytest.raises(GraphError):
        minimize_exact(g)


def test_vertex_limit():
    g, _ = gen_complete_binary_tree(3)
    with pytest.raises(GraphError):
        minimize_exact(g)


def test_budget_exhaustion_is_reported():
    g, _ = gen_path(8)
    res = minimize_exact(g, budget=SearchBudget(max_states=3))
    assert not res.exhaustive
    assert res.min_size <= g.n
    assert replay_witness(g, res.witness) == res.best


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        SearchBudget(max_states=0)


@given(small_graphs(max_n=7), st.randoms())
def test_encoding_ignores_nonterminal_names(g, rnd):
    others = [v for v in g.vertices if not g.is_terminal(v)]
    shuffled = list(others)
    rnd.shuffle(shuffled)
    perm = {v: v for v in g.terminals}
    perm.update(zip(others, shuffled))
    assert canonical_encoding(relabel(g, perm)) == canonical_encoding(g)


@given(small_graphs(max_n=6), small_graphs(max_n=6))
def test_equal_encoding_means_equal_terminal_distances(a, b):
    if canonical_encoding(a) == canonical_encoding(b):
        assert terminal_distances(a) == terminal_distances(b)


def test_encoding_separates_lengths():
    a = build_graph(3, [1, 3], [(1, 2, 1), (2, 3, 1)])
    b = build_graph(3, [1, 3], [(1, 2, 1), (2, 3, 2)])
    assert canonical_encoding(a) != canonical_encoding(b)


@settings(max_examples=30)
@given(small_graphs(max_n=7))
def test_minimum_never_exceeds_naive(g):
    res = minimize_exact(g)
    assert res.exhaustive
    assert res.min_size <= reduce_naive(g).reduced.n
    assert terminal_distances(res.best) == terminal_distances(g)
    assert replay_witness(g, res.witness) == res.best


@settings(max_examples=20)
@given(small_graphs(max_n=6))
def test_edge_deletions_do_not_lower_the_minimum(g):
    assert minimize_exact(g, edge_deletions=True).min_size == minimize_exact(g).min_size


@settings(max_examples=20)
@given(st.integers(2, 8), st.integers(0, 10 ** 6))
def test_small_trees(n, seed):
    g, R = gen_random_tree(n, seed)
    k = len(R)
    assert minimize_exact(g).min_size <= max(2 * k - 2, k)


def test_zero_length_edge_graph():
    g = build_graph(3, [1, 3], [(1, 2, 0), (2, 3, Fraction(1, 2))])
    assert minimize_exact(g).min_size == 2


@settings(max_examples=30)
@given(small_graphs(max_n=7, min_k=2), st.randoms())
def test_collision_audit_over_minors(g, rnd):
    # bucket many minors of one graph by encoding; a bucket must agree on terminal distances
    from dpminor.graph import ContractEdge, DeleteEdge, DeleteVertex, apply_minor_op
    buckets = {}
    for _ in range(25):
        h = g
        for _ in range(rnd.randint(0, 4)):
            ops = [DeleteVertex(v) for v in h.vertices if not h.is_terminal(v)]
            ops += [DeleteEdge(u, v) for u, v, _, _ in h.edges()]
            ops += [ContractEdge(u, v, v if h.is_terminal(v) else u) for u, v, _, _ in h.edges()
                    if not (h.is_terminal(u) and h.is_terminal(v))]
            if not ops:
                break
            h = apply_minor_op(h, rnd.choice(ops))
        buckets.setdefault(canonical_encoding(h), []).append(terminal_distances(h))
    for dists in buckets.values():
        assert all(d == dists[0] for d in dists)
