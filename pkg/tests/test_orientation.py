from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from oracles import orientable_by_search, sparse_by_subset_count
from sparsekit.orientation import (
    OrientationFailure,
    class_membership,
    edges_within,
    find_acyclic_orientation,
    find_orientation,
    has_directed_cycle,
    is_k_sparse,
    orientation_respects,
)
from sparsekit.structures import Graph, OrientedGraph, complete_graph, cycle_graph


def edge_list(G: Graph):
    return sorted(G.edges)


class TestSparsity:
    def test_empty_graph(self):
        assert is_k_sparse(Graph(), 1)
        assert is_k_sparse(Graph([0, 1, 2]), 1)

    def test_k6_is_not_2_sparse(self):
        assert not is_k_sparse(complete_graph(6), 2)
        assert not sparse_by_subset_count(6, edge_list(complete_graph(6)), 2)

    def test_k5_is_2_sparse(self):
        assert is_k_sparse(complete_graph(5), 2)
        assert sparse_by_subset_count(5, edge_list(complete_graph(5)), 2)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            is_k_sparse(cycle_graph(3), 0)

    @given(graphs(max_n=7), st.integers(1, 3))
    def test_agrees_with_subset_count(self, G, k):
        assert is_k_sparse(G, k) == sparse_by_subset_count(len(G), edge_list(G), k)


class TestFindOrientation:
    def test_four_cycle_with_cap_one_is_cyclic(self):
        D = find_orientation(cycle_graph(4), 1)
        assert all(len(s) == 1 for s in D.succ.values())
        assert has_directed_cycle(D)

    def test_k4_with_cap_two(self):
        D = find_orientation(complete_graph(4), 2)
        assert len(D.arcs) == 6
        assert orientation_respects(D, complete_graph(4), dict.fromkeys(range(4), 2))

    def test_triangle_with_cap_zero_fails_on_the_triangle(self):
        with pytest.raises(OrientationFailure) as info:
            find_orientation(cycle_graph(3), 0)
        assert info.value.witness == {0, 1, 2}

    def test_capacity_map(self):
        G = Graph([0, 1, 2], [(0, 1), (0, 2)])
        D = find_orientation(G, {0: 0, 1: 1, 2: 1})
        assert D.arcs == {(1, 0), (2, 0)}

    def test_missing_capacity_rejected(self):
        with pytest.raises(ValueError):
            find_orientation(Graph([0, 1], [(0, 1)]), {0: 1})

    @given(graphs(max_n=7), st.integers(0, 2))
    def test_success_or_genuine_witness(self, G, k):
        try:
            D = find_orientation(G, k)
        except OrientationFailure as exc:
            B = exc.witness
            assert edges_within(G, B) > k * len(B)
            assert not orientable_by_search(len(G), edge_list(G), k)
        else:
            assert orientation_respects(D, G, dict.fromkeys(G.vertices, k))

    @given(graphs(max_n=7), st.data())
    def test_raising_a_capacity_keeps_success(self, G, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        caps = {v: rng.randint(0, 2) for v in G.vertices}
        ok_before = _succeeds(find_orientation, G, caps)
        if G.vertices:
            v = rng.choice(sorted(G.vertices))
            caps[v] += 1
        if ok_before:
            assert _succeeds(find_orientation, G, caps)


def _succeeds(finder, G, caps) -> bool:
    try:
        finder(G, caps)
    except OrientationFailure:
        return False
    return True


class TestAcyclicOrientation:
    def test_four_cycle_with_cap_two(self):
        D = find_acyclic_orientation(cycle_graph(4), 2)
        assert not has_directed_cycle(D)

    def test_k4_with_cap_two_fails_on_everything(self):
        with pytest.raises(OrientationFailure) as info:
            find_acyclic_orientation(complete_graph(4), 2)
        assert info.value.witness == {0, 1, 2, 3}

    def test_single_vertex_with_cap_zero(self):
        assert find_acyclic_orientation(Graph([0]), 0) == OrientedGraph([0])

    @given(graphs(max_n=7), st.integers(0, 3))
    def test_success_or_genuine_witness(self, G, k):
        try:
            D = find_acyclic_orientation(G, k)
        except OrientationFailure as exc:
            B = exc.witness
            assert B
            assert all(len(G.adj[v] & B) > k for v in B)
        else:
            assert not has_directed_cycle(D)
            assert orientation_respects(D, G, dict.fromkeys(G.vertices, k))

    @given(graphs(max_n=7), st.data())
    def test_raising_a_capacity_keeps_success(self, G, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        caps = {v: rng.randint(0, 2) for v in G.vertices}
        ok_before = _succeeds(find_acyclic_orientation, G, caps)
        for v in G.vertices:
            caps[v] += rng.randint(0, 1)
        if ok_before:
            assert _succeeds(find_acyclic_orientation, G, caps)


class TestClassMembership:
    def test_k4(self):
        assert class_membership(complete_graph(4)) == {"C0"}

    def test_four_cycle(self):
        assert class_membership(cycle_graph(4)) == {"C0", "C1"}

    def test_directed_triangle(self):
        assert class_membership(OrientedGraph([0, 1, 2], [(0, 1), (1, 2), (2, 0)])) == {"D0"}

    def test_out_degree_three(self):
        assert class_membership(OrientedGraph([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)])) == set()

    def test_k6_is_in_nothing(self):
        assert class_membership(complete_graph(6)) == set()

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            class_membership("not a graph")

    @given(graphs(max_n=7))
    def test_c1_is_inside_c0(self, G):
        labels = class_membership(G)
        if "C1" in labels:
            assert "C0" in labels
