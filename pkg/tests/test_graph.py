from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dpminor.graph import (APPROX, ContractEdge, DeleteEdge, DeleteVertex, Graph,
                           GraphError, MinorOpError, Witness, WitnessError,
                           apply_minor_op, apply_ops, as_length, build_graph,
                           replay_witness, union_graphs)
from oracles import small_graphs


def path3():
    return build_graph(3, [1, 3], [(1, 2, 1), (2, 3, 1)])


class TestBuild:
    def test_smallest_graph(self):
        g = build_graph(2, {1, 2}, [(1, 2, 5)])
        assert (g.n, g.m) == (2, 1)
        assert g.edge(1, 2) == (Fraction(5), 1)

    def test_parallel_edges_collapse_to_min(self):
        g = build_graph(3, [], [(1, 2, 3), (1, 2, 7)])
        assert g.m == 1
        assert g.edge(2, 1) == (Fraction(3), 1)

    def test_parallel_collapse_keeps_min_even_when_later(self):
        g = build_graph(2, [], [(1, 2, 7), (2, 1, 3)])
        assert g.edge(1, 2) == (Fraction(3), 1)

    @pytest.mark.parametrize("n,terms,edges", [
        (2, [], [(1, 1, 1)]),
        (2, [], [(1, 3, 1)]),
        (2, [], [(1, 2, -1)]),
        (2, [5], [(1, 2, 1)]),
    ])
    def test_rejects(self, n, terms, edges):
        with pytest.raises(GraphError):
            build_graph(n, terms, edges)

    def test_indices_follow_input_order(self):
        g = build_graph(4, [], [(3, 4, 1), (1, 2, 2), (2, 3, 3)])
        assert [e[3] for e in g.edges()] == [1, 2, 3]
        assert g.edge(3, 4)[1] == 1

    def test_float_in_exact_mode_uses_repr(self):
        assert as_length(0.1) == Fraction(1, 10)

    def test_approx_mode(self):
        g = build_graph(2, [1, 2], [(1, 2, "1/4")], mode=APPROX)
        assert g.edge(1, 2)[0] == 0.25
        assert isinstance(g.edge(1, 2)[0], float)

    def test_scale_is_common_denominator(self):
        g = build_graph(3, [], [(1, 2, Fraction(1, 6)), (2, 3, Fraction(3, 4))])
        assert g.scale == 12


class TestMinorOps:
    def test_contract_path_is_length_additive(self):
        # contraction carries the contracted edge's length onto the re-attached edge
        h = apply_minor_op(path3(), ContractEdge(1, 2, 1))
        assert h.vertices == [1, 3]
        assert h.edge(1, 3) == (Fraction(2), 2)

    def test_contract_triangle_drops_loop_and_merges(self):
        g = build_graph(3, [], [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
        h = apply_minor_op(g, ContractEdge(1, 2, 1))
        assert h.vertices == [1, 3]
        assert h.m == 1
        # parallel (1,3) edges: the original length 1 beats 1 + 1
        assert h.edge(1, 3) == (Fraction(1), 2)

    def test_terminal_terminal_contraction_rejected(self):
        g = build_graph(2, [1, 2], [(1, 2, 1)])
        for s in (1, 2):
            with pytest.raises(MinorOpError):
                apply_minor_op(g, ContractEdge(1, 2, s))

    def test_survivor_must_be_terminal_endpoint(self):
        with pytest.raises(MinorOpError):
            apply_minor_op(path3(), ContractEdge(1, 2, 2))

    def test_terminal_flag_is_or(self):
        h = apply_minor_op(path3(), ContractEdge(2, 3, 3))
        assert h.is_terminal(3) and 2 not in h

    def test_delete_terminal_rejected(self):
        with pytest.raises(MinorOpError):
            apply_minor_op(path3(), DeleteVertex(1))

    @pytest.mark.parametrize("op", [DeleteVertex(9), DeleteEdge(1, 3), ContractEdge(1, 3, 1)])
    def test_absent_targets_rejected(self, op):
        with pytest.raises(MinorOpError):
            apply_minor_op(path3(), op)

    def test_delete_edge_keeps_vertices(self):
        h = apply_minor_op(path3(), DeleteEdge(2, 3))
        assert h.vertices == [1, 2, 3] and h.m == 1

    def test_ops_return_new_graphs(self):
        g = path3()
        before = g.fingerprint
        apply_minor_op(g, DeleteVertex(2))
        assert g.fingerprint == before and g.n == 3

    def test_surviving_indices_unchanged(self):
        g = build_graph(4, [1, 4], [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 5)])
        h = apply_minor_op(g, DeleteVertex(2))
        assert h.edge(3, 4)[1] == 3 and h.edge(1, 4)[1] == 4


class TestReplay:
    def test_empty_witness_is_identity(self):
        g = path3()
        assert replay_witness(g, Witness(g.fingerprint)) == g

    def test_path5_contracts_to_single_edge(self):
        g = build_graph(6, [1, 6], [(i, i + 1, 1) for i in range(1, 6)])
        w = Witness(g.fingerprint, tuple(ContractEdge(i, i + 1, i + 1) for i in range(2, 6)))
        h = replay_witness(g, w)
        assert h.vertices == [1, 6]
        assert h.edge(1, 6)[0] == 5

    def test_stale_fingerprint(self):
        g = path3()
        with pytest.raises(WitnessError):
            replay_witness(g, Witness("0" * 64, ()))

    def test_failing_op_index_reported(self):
        g = path3()
        w = Witness(g.fingerprint, (DeleteVertex(2), DeleteVertex(2)))
        with pytest.raises(WitnessError) as info:
            replay_witness(g, w)
        assert info.value.index == 1

    @given(small_graphs(), st.data())
    def test_replay_is_deterministic(self, g, data):
        ops = []
        h = g
        for _ in range(data.draw(st.integers(0, 4))):
            cands = [DeleteVertex(v) for v in h.vertices if not h.is_terminal(v)]
            cands += [DeleteEdge(u, v) for u, v, _, _ in h.edges()]
            cands += [ContractEdge(u, v, v if h.is_terminal(v) else u)
                      for u, v, _, _ in h.edges()
                      if not (h.is_terminal(u) and h.is_terminal(v))]
            if not cands:
                break
            op = data.draw(st.sampled_from(cands))
            ops.append(op)
            h = apply_minor_op(h, op)
        w = Witness(g.fingerprint, tuple(ops))
        a, b = replay_witness(g, w), replay_witness(g, w)
        assert a == b == h
        assert a.edges() == b.edges() and a.fingerprint == b.fingerprint


class TestUnion:
    def test_idempotent(self):
        g = path3()
        assert union_graphs(g, g) == g

    def test_shared_edge_takes_min(self):
        a = build_graph(2, [], [(1, 2, 3)])
        b = build_graph(2, [], [(1, 2, 5)])
        assert union_graphs(a, b).edge(1, 2)[0] == 3
        assert union_graphs(b, a).edge(1, 2)[0] == 3

    def test_disjoint(self):
        a = Graph.from_edges([1, 2], [1], [(1, 2, 1, 1)])
        b = Graph.from_edges([3, 4], [4], [(3, 4, 2, 2)])
        u = union_graphs(a, b)
        assert u.vertices == [1, 2, 3, 4] and u.m == 2 and u.terminals == {1, 4}

    def test_flag_conflict(self):
        a = Graph.from_edges([1, 2], [1], [(1, 2, 1, 1)])
        b = Graph.from_edges([1, 2], [], [(1, 2, 1, 1)])
        with pytest.raises(GraphError):
            union_graphs(a, b)

    @given(small_graphs(max_n=6), small_graphs(max_n=6), small_graphs(max_n=6))
    def test_commutative_and_associative(self, a, b, c):
        # flags must agree on shared ids, so force a common terminal set
        def norm(g):
            return Graph.from_edges(g.vertices, [v for v in g.vertices if v % 2],
                                    g.edges())
        a, b, c = norm(a), norm(b), norm(c)
        assert union_graphs(a, b) == union_graphs(b, a)
        assert union_graphs(union_graphs(a, b), c) == union_graphs(a, union_graphs(b, c))


class TestFingerprint:
    def test_stable_and_sensitive(self):
        g = path3()
        assert g.fingerprint == path3().fingerprint
        h = build_graph(3, [1, 3], [(1, 2, 1), (2, 3, 2)])
        assert g.fingerprint != h.fingerprint
