from fractions import Fraction

from hypothesis import given, strategies as st

from dpminor.generators import (gen_complete_binary_tree, gen_grid_lb, gen_path,
                                gen_random_tree)
from dpminor.graph import DeleteVertex, build_graph, replay_witness
from dpminor.naive import contract_degree2, reduce_naive, restrict_to_shortest_paths
from oracles import floyd_warshall, small_graphs, terminal_distances


def cycle4(R):
    return build_graph(4, R, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 1, 1)])


class TestRestrict:
    def test_cycle_keeps_canonical_path(self):
        res = restrict_to_shortest_paths(cycle4([1, 3]))
        assert res.reduced.vertices == [1, 3, 4]
        assert res.witness.ops[0] == DeleteVertex(2)
        assert {(u, v) for u, v, _, _ in res.reduced.edges()} == {(3, 4), (1, 4)}

    def test_tree_with_leaf_terminals_loses_nothing(self):
        g, _ = gen_complete_binary_tree(3)
        res = restrict_to_shortest_paths(g)
        assert res.reduced == g and len(res.witness) == 0

    def test_single_terminal(self):
        res = restrict_to_shortest_paths(cycle4([2]))
        assert res.reduced.vertices == [2] and res.reduced.m == 0

    def test_no_terminals(self):
        res = restrict_to_shortest_paths(cycle4([]))
        assert res.reduced.n == 0


class TestContract:
    def test_path5(self):
        g, _ = gen_path(5)
        res = contract_degree2(g)
        assert res.reduced.vertices == [1, 6]
        assert res.reduced.edge(1, 6)[0] == 5

    def test_two_path_sum(self):
        g = build_graph(3, [1, 3], [(1, 2, 3), (2, 3, 4)])
        res = contract_degree2(g)
        assert res.reduced.vertices == [1, 3] and res.reduced.edge(1, 3)[0] == 7

    def test_all_terminal_triangle_unchanged(self):
        g = build_graph(3, [1, 2, 3], [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
        res = contract_degree2(g)
        assert res.reduced == g and len(res.witness) == 0

    def test_existing_parallel_edge_min_merged(self):
        g = build_graph(3, [1, 3], [(1, 2, 1), (2, 3, 1), (1, 3, 5)])
        res = contract_degree2(g)
        assert res.reduced.edge(1, 3)[0] == 2


class TestReduce:
    def test_cbt_depth3(self):
        g, R = gen_complete_binary_tree(3)
        assert reduce_naive(g).reduced.n == 14 == 2 * len(R) - 2

    def test_star(self):
        g = build_graph(4, [2, 3, 4], [(1, 2, 1), (1, 3, 1), (1, 4, 1)])
        res = reduce_naive(g)
        assert res.reduced.n == 4 and res.reduced.degree(1) == 3

    def test_grid4_exact(self):
        g, _ = gen_grid_lb(4)
        res = reduce_naive(g)
        want = terminal_distances(g)
        assert len(want) == 6
        assert terminal_distances(res.reduced) == want

    def test_extra_terminals_argument(self):
        g, _ = gen_path(4)
        res = reduce_naive(g, {3})
        assert res.reduced.vertices == [1, 3, 5]


def _check(g):
    res = reduce_naive(g)
    h = res.reduced
    assert replay_witness(g, res.witness) == h
    assert terminal_distances(h) == terminal_distances(g)
    d, d2 = floyd_warshall(g), floyd_warshall(h)
    for x in h.vertices:
        for y in h.vertices:
            if d2[x, y] is not None:
                assert d[x, y] is not None and d2[x, y] >= d[x, y]
    assert set(res.vertex_map) == set(h.vertices)
    assert g.terminals <= set(res.vertex_map.values())
    return res


@given(small_graphs(max_n=9))
def test_random_graphs_preserve_and_dominate(g):
    _check(g)


@given(small_graphs(max_n=9))
def test_fixpoint(g):
    h = reduce_naive(g).reduced
    again = reduce_naive(h)
    assert again.reduced == h and len(again.witness) == 0


@given(small_graphs(max_n=9))
def test_general_size_bound(g):
    h = reduce_naive(g).reduced
    k = len(g.terminals)
    assert h.n <= k + k ** 4 and h.m <= k ** 4 + k ** 2


@given(st.integers(2, 40), st.integers(0, 10 ** 6))
def test_tree_bound_and_branching(n, seed):
    g, R = gen_random_tree(n, seed)
    h = _check(g).reduced
    k = len(R)
    assert h.n <= max(2 * k - 2, k)
    for v in h.vertices:
        if not h.is_terminal(v):
            assert h.degree(v) >= 3


def test_zero_length_edges_ok():
    g = build_graph(4, [1, 4], [(1, 2, 0), (2, 3, Fraction(1, 2)), (3, 4, 0), (1, 4, 1)])
    _check(g)
