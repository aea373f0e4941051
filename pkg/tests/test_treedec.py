import pytest
from hypothesis import given, strategies as st

from dpminor.generators import gen_grid_lb, gen_path, gen_random_partial_ktree, gen_random_tree
from dpminor.graph import build_graph
from dpminor.treedec import (DecompositionError, TreeDecomposition, balanced_separator,
                             heuristic_tree_decomposition, separator_violations, validate_td)
from oracles import small_graphs


def path9():
    return build_graph(9, [], [(i, i + 1, 1) for i in range(1, 9)])


def path_td(n):
    return TreeDecomposition([{i, i + 1} for i in range(1, n)],
                             [(i, i + 1) for i in range(n - 2)])


def test_heuristic_on_path():
    td = heuristic_tree_decomposition(path9())
    assert td.width == 1
    assert sorted(sorted(b) for b in td.bags) == [[i, i + 1] for i in range(1, 9)]
    assert validate_td(path9(), td)


def test_heuristic_on_tree():
    g, _ = gen_random_tree(30, 4)
    td = heuristic_tree_decomposition(g)
    assert td.width == 1 and validate_td(g, td)


def test_heuristic_on_grid():
    g, _ = gen_grid_lb(4)
    td = heuristic_tree_decomposition(g)
    assert td.width <= 4 and validate_td(g, td)


@given(small_graphs(max_n=9))
def test_heuristic_always_valid(g):
    assert validate_td(g, heuristic_tree_decomposition(g))


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_heuristic_width_bounded_on_partial_ktrees(width, seed):
    g, _, td = gen_random_partial_ktree(40, width, 5, seed)
    assert validate_td(g, td) and td.width == width
    assert validate_td(g, heuristic_tree_decomposition(g))


class TestValidate:
    def test_accepts_path_decomposition(self):
        assert validate_td(path9(), path_td(9))

    def test_missing_edge(self):
        td = path_td(9)
        td.bags[3] = frozenset({4})
        v = validate_td(path9(), td)
        assert not v and v.edge == (4, 5)

    def test_disconnected_occurrences(self):
        g = build_graph(3, [], [(1, 2, 1), (2, 3, 1)])
        td = TreeDecomposition([{1, 2}, {3}, {2, 3}], [(0, 1), (1, 2)])
        v = validate_td(g, td)
        assert not v and v.vertex == 2

    def test_missing_vertex(self):
        g = build_graph(3, [], [(1, 2, 1)])
        v = validate_td(g, TreeDecomposition([{1, 2}]))
        assert not v and v.vertex == 3

    def test_not_a_tree(self):
        g = build_graph(2, [], [(1, 2, 1)])
        td = TreeDecomposition([{1, 2}, {1}, {2}], [(0, 1)])
        assert not validate_td(g, td)


class TestSeparator:
    def test_path9_centroid(self):
        g = path9()
        A1, S, A2 = balanced_separator(g, path_td(9), g.vertices)
        assert S in ({4, 5}, {5, 6})
        assert len(A1) <= 6 and len(A2) <= 6
        assert separator_violations(g, balanced_separator(g, path_td(9), g.vertices),
                                    g.vertices, 2) == []

    def test_single_weight_vertex(self):
        g = path9()
        trip = balanced_separator(g, path_td(9), [7])
        assert 7 in trip.S
        assert separator_violations(g, trip, [7], 2) == []

    def test_disconnected_uses_empty_separator(self):
        g = build_graph(6, [], [(1, 2, 1), (2, 3, 1), (4, 5, 1), (5, 6, 1)])
        td = heuristic_tree_decomposition(g)
        trip = balanced_separator(g, td, g.vertices)
        assert trip.S == frozenset()
        assert {trip.A1, trip.A2} == {frozenset({1, 2, 3}), frozenset({4, 5, 6})}

    def test_empty_graph(self):
        g = build_graph(0, [], [])
        with pytest.raises(DecompositionError):
            balanced_separator(g, TreeDecomposition([]), [])

    @given(small_graphs(max_n=9), st.data())
    def test_always_sound(self, g, data):
        td = heuristic_tree_decomposition(g)
        U = data.draw(st.lists(st.sampled_from(g.vertices), unique=True))
        trip = balanced_separator(g, td, U)
        assert separator_violations(g, trip, U, td.width + 1) == []

    @given(st.integers(1, 3), st.integers(0, 10 ** 6))
    def test_sound_on_restricted_decompositions(self, width, seed):
        g, R, td = gen_random_partial_ktree(60, width, 20, seed)
        half = g.vertices[::2]
        h = g.induced(half)
        sub = td.restrict(half)
        assert validate_td(h, sub)
        trip = balanced_separator(h, sub, R & set(half))
        assert separator_violations(h, trip, R & set(half), width + 1) == []


def test_restrict_keeps_tree():
    g, _ = gen_path(8)
    td = heuristic_tree_decomposition(g)
    sub = td.restrict([1, 2, 3])
    assert validate_td(g.induced([1, 2, 3]), sub)
