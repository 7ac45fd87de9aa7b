from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import d1_digraphs, graphs
from oracles import labeled_edge_sets, strong_subsets_by_orientation
from sparsekit.closure import (
    closed_subsets,
    is_le1,
    is_successor_closed,
    le1_orientation,
    order_from_orientation,
    orientation_from_order,
    scl,
)
from sparsekit.orientation import in_D1
from sparsekit.structures import (
    Graph,
    OrderedGraph,
    OrientedGraph,
    StructureError,
    complete_graph,
    cycle_graph,
    induced_substructure,
    path_graph,
    star_graph,
)

PATH = OrientedGraph([0, 1, 2], [(0, 1), (1, 2)])


class TestScl:
    def test_path_from_head(self):
        assert scl(PATH, {0}) == {0, 1, 2}

    def test_sink(self):
        assert scl(PATH, {2}) == {2}

    def test_small_dag(self):
        D = OrientedGraph([0, 1, 2], [(0, 1), (0, 2), (2, 1)])
        assert scl(D, {2}) == {1, 2}

    def test_unknown_vertex(self):
        with pytest.raises(StructureError):
            scl(PATH, {7})

    @given(d1_digraphs(max_n=10), st.data())
    def test_closure_operator_laws(self, D, data):
        vs = sorted(D.vertices)
        small = set(data.draw(st.lists(st.sampled_from(vs), unique=True))) if vs else set()
        big = small | (set(data.draw(st.lists(st.sampled_from(vs), unique=True))) if vs else set())
        c = scl(D, small)
        assert small <= c
        assert scl(D, c) == c
        assert c <= scl(D, big)
        assert is_successor_closed(D, c)


class TestSuccessorClosed:
    def test_full_set(self):
        assert is_successor_closed(PATH, PATH.vertices)

    def test_tail_of_path(self):
        assert is_successor_closed(PATH, {1, 2})

    def test_head_alone(self):
        assert not is_successor_closed(PATH, {0})

    def test_closed_subsets_of_a_path(self):
        assert closed_subsets(PATH) == [frozenset(), {2}, {1, 2}, {0, 1, 2}]

    @given(d1_digraphs(max_n=7))
    def test_closed_subsets_exhaustive(self, D):
        vs = sorted(D.vertices)
        expected = {frozenset(c) for r in range(len(vs) + 1)
                    for c in itertools.combinations(vs, r) if is_successor_closed(D, c)}
        assert set(closed_subsets(D)) == expected


class TestLe1:
    def test_empty_set_in_a_c1_graph(self):
        assert is_le1(set(), cycle_graph(5))

    def test_empty_set_in_k4(self):
        assert not is_le1(set(), complete_graph(4))

    def test_point_of_a_four_cycle(self):
        assert is_le1({0}, cycle_graph(4))

    def test_centre_of_a_three_star(self):
        assert is_le1({0}, star_graph(3))

    def test_leaf_of_k4(self):
        assert not is_le1({0}, complete_graph(4))

    def test_point_with_three_neighbours_inside(self):
        # 3 neighbours in A give the outside vertex out-degree 3
        G = Graph(range(4), [(3, 0), (3, 1), (3, 2)])
        assert not is_le1({0, 1, 2}, G)

    def test_witness_orientation(self):
        G = cycle_graph(6)
        D = le1_orientation({0, 1}, G)
        assert D is not None and in_D1(D)
        assert D.reduct() == G
        assert is_successor_closed(D, {0, 1})

    def test_unknown_vertex(self):
        with pytest.raises(StructureError):
            is_le1({9}, cycle_graph(3))

    def test_exhaustive_against_orientation_oracle_up_to_five(self):
        for n in range(6):
            for edges in labeled_edge_sets(n):
                G = Graph(range(n), edges)
                realizable = strong_subsets_by_orientation(n, edges)
                for mask in range(1 << n):
                    A = [v for v in range(n) if mask >> v & 1]
                    assert is_le1(A, G) == (mask in realizable), (edges, A)

    def test_transitivity_exhaustive_up_to_five(self):
        for n in range(6):
            for edges in labeled_edge_sets(n):
                C = Graph(range(n), edges)
                strong_in_c = {m for m in range(1 << n)
                               if is_le1([v for v in range(n) if m >> v & 1], C)}
                for b in strong_in_c:
                    B = [v for v in range(n) if b >> v & 1]
                    CB = induced_substructure(C, B)
                    sub = b
                    while True:
                        A = [v for v in range(n) if sub >> v & 1]
                        if is_le1(A, CB):
                            assert sub in strong_in_c
                        if sub == 0:
                            break
                        sub = (sub - 1) & b

    @settings(max_examples=60)
    @given(graphs(min_n=6, max_n=6), st.data())
    def test_transitivity_on_six_vertices(self, C, data):
        vs = sorted(C.vertices)
        B = set(data.draw(st.lists(st.sampled_from(vs), unique=True)))
        A = set(data.draw(st.lists(st.sampled_from(sorted(B)), unique=True))) if B else set()
        if is_le1(B, C) and is_le1(A, induced_substructure(C, B)):
            assert is_le1(A, C)


class TestOrderFromOrientation:
    def test_path(self):
        assert order_from_orientation(PATH).order == (2, 1, 0)

    def test_antichain_uses_id_order(self):
        assert order_from_orientation(OrientedGraph([3, 1, 2])).order == (1, 2, 3)

    def test_fork_tie_by_id(self):
        D = OrientedGraph([0, 1, 2], [(0, 1), (0, 2)])
        assert order_from_orientation(D).order == (1, 2, 0)

    def test_partial_order_is_respected(self):
        D = OrientedGraph([0, 1, 2, 3], [(0, 1), (0, 2)])
        partial = OrderedGraph(Graph([1, 2]), [2, 1])
        order = order_from_orientation(D, partial).order
        assert order.index(2) < order.index(1) < order.index(0)

    def test_conflicting_partial_rejected(self):
        partial = OrderedGraph(Graph([1, 2]), [1, 2])
        with pytest.raises(ValueError):
            order_from_orientation(PATH, partial)

    def test_cyclic_or_high_degree_input_rejected(self):
        with pytest.raises(ValueError):
            order_from_orientation(OrientedGraph([0, 1, 2], [(0, 1), (1, 2), (2, 0)]))
        with pytest.raises(ValueError):
            order_from_orientation(OrientedGraph(range(4), [(0, 1), (0, 2), (0, 3)]))

    @given(d1_digraphs(max_n=8))
    def test_round_trip(self, D):
        assert orientation_from_order(order_from_orientation(D)) == D


class TestOrientationFromOrder:
    def test_star_with_centre_last_fails(self):
        A = OrderedGraph(star_graph(3), [1, 2, 3, 0])
        assert orientation_from_order(A) is None

    def test_star_with_centre_first_succeeds(self):
        A = OrderedGraph(star_graph(3), [0, 1, 2, 3])
        assert orientation_from_order(A).arcs == {(1, 0), (2, 0), (3, 0)}

    def test_single_edge(self):
        A = OrderedGraph(path_graph(2), [0, 1])
        assert orientation_from_order(A) == OrientedGraph([0, 1], [(1, 0)])

    @given(graphs(max_n=7), st.data())
    def test_output_is_acyclic_when_defined(self, G, data):
        A = OrderedGraph(G, data.draw(st.permutations(sorted(G.vertices))))
        D = orientation_from_order(A)
        if D is not None:
            assert in_D1(D)
        else:
            assert any(sum(1 for u in G.adj[v] if A.rank[u] < A.rank[v]) > 2 for v in G.vertices)
