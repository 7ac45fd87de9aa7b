from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import acyclic_orientations, labeled_edge_sets
from sparsekit.closure import is_le1
from sparsekit.lab import (
    ClassSample,
    all_graphs,
    all_oriented_graphs,
    check_amalgamation,
    check_expansion_witness,
    class_sample,
    enumerate_acyclic_orientations,
    iter_embeddings,
    le1_by_enumeration,
    orientation_exists_bruteforce,
    random_d1,
    search_wap_witness,
    sparse_by_counting,
)
from sparsekit.orientation import (
    OrientationFailure,
    find_acyclic_orientation,
    has_directed_cycle,
    in_D1,
)
from sparsekit.structures import (
    Graph,
    OrderedGraph,
    OrientedGraph,
    complete_graph,
    cycle_graph,
    path_graph,
)

POINT = Graph([0])
EDGE = path_graph(2)


class TestEnumeration:
    def test_single_edge(self):
        assert len(enumerate_acyclic_orientations(EDGE, 2)) == 2

    def test_triangle(self):
        assert len(enumerate_acyclic_orientations(cycle_graph(3), 2)) == 6

    def test_k4_has_none(self):
        assert enumerate_acyclic_orientations(complete_graph(4), 2) == []

    def test_edge_limit(self):
        with pytest.raises(ValueError):
            enumerate_acyclic_orientations(complete_graph(7), 2)

    def test_counts_match_independent_enumeration(self):
        for n in range(5):
            for edges in labeled_edge_sets(n):
                G = Graph(range(n), edges)
                for k in (1, 2):
                    mine = {frozenset(D.arcs) for D in enumerate_acyclic_orientations(G, k)}
                    theirs = {frozenset((u, v) for u in range(n) for v in range(n)
                                        if succ[u] >> v & 1)
                              for succ in acyclic_orientations(n, edges, k)}
                    assert mine == theirs

    def test_outputs_are_acyclic_and_capped(self):
        for D in enumerate_acyclic_orientations(cycle_graph(5), 1):
            assert not has_directed_cycle(D)
            assert all(len(s) <= 1 for s in D.succ.values())

    def test_nonempty_iff_peeling_succeeds(self):
        for n in range(6):
            for G in all_graphs(n):
                for k in (1, 2):
                    try:
                        find_acyclic_orientation(G, k)
                        peeled = True
                    except OrientationFailure:
                        peeled = False
                    assert peeled == bool(enumerate_acyclic_orientations(G, k))


class TestSmallOracles:
    def test_graph_counts(self):
        assert sum(1 for _ in all_graphs(4)) == 64
        assert sum(1 for _ in all_oriented_graphs(3)) == 27

    @given(graphs(max_n=6), st.integers(1, 2))
    def test_brute_force_orientation_matches_counting(self, G, k):
        assert orientation_exists_bruteforce(G, k) == sparse_by_counting(G, k)

    @settings(max_examples=60)
    @given(graphs(max_n=6), st.data())
    def test_le1_by_enumeration(self, G, data):
        A = data.draw(st.sets(st.sampled_from(sorted(G.vertices)))) if G.vertices else set()
        assert le1_by_enumeration(A, G) == is_le1(A, G)

    def test_random_d1(self):
        import random
        rng = random.Random(3)
        for n in range(12):
            assert in_D1(random_d1(n, rng))

    def test_embeddings_of_an_edge_into_a_triangle(self):
        assert len(list(iter_embeddings(EDGE, cycle_graph(3)))) == 6
        assert list(iter_embeddings(Graph([0, 1]), cycle_graph(3))) == []


class TestSamples:
    def test_sizes(self):
        # iso types of C1 graphs on up to 4 vertices: all but K4
        assert len(class_sample("le1", 4).members) == 1 + 1 + 2 + 4 + 10

    def test_k4_labelled_as_c1_is_rejected(self):
        with pytest.raises(ValueError):
            ClassSample((Graph(), POINT, complete_graph(4)), "le1", 4)

    def test_missing_strong_substructure_is_rejected(self):
        with pytest.raises(ValueError):
            ClassSample((Graph(), EDGE), "le1", 2)

    def test_duplicate_types_rejected(self):
        with pytest.raises(ValueError):
            ClassSample((Graph(), POINT, Graph([5])), "le1", 1)

    def test_unknown_notion(self):
        with pytest.raises(ValueError):
            class_sample("other", 2)


class TestAmalgamation:
    @pytest.mark.parametrize("notion", ["le1", "scl"])
    def test_no_failures_at_bound_three(self, notion):
        report = check_amalgamation(class_sample(notion, 3))
        assert report.spans_checked > 0
        assert report.ok

    def test_bound_limit(self):
        with pytest.raises(ValueError):
            check_amalgamation(class_sample("le1", 6))

    def test_ordered_samples_rejected(self):
        with pytest.raises(ValueError):
            check_amalgamation(class_sample("le1_ordered", 2))


class TestExpansion:
    def test_point_into_point(self):
        assert check_expansion_witness(POINT, POINT, "order")

    def test_edge_into_edge(self):
        # both orders of an edge are isomorphic, so one target order absorbs them
        assert check_expansion_witness(EDGE, EDGE, "order")

    def test_edge_into_three_path(self):
        # every order of the path has an edge going up, which matches either order of A
        assert check_expansion_witness(EDGE, path_graph(3), "order")

    def test_non_edge_into_edge_fails(self):
        assert not check_expansion_witness(Graph([0, 1]), EDGE, "order")

    def test_orientations_of_a_path_do_not_absorb_each_other(self):
        assert not check_expansion_witness(path_graph(3), path_graph(3), "orientation")

    def test_admissible_kind(self):
        arc = OrientedGraph([0, 1], [(0, 1)])
        fork = OrientedGraph([0, 1, 2], [(0, 1), (0, 2)])
        assert check_expansion_witness(OrientedGraph([0]), arc, "admissible")
        path = OrientedGraph([0, 1, 2], [(0, 1), (1, 2)])
        assert check_expansion_witness(arc, path, "admissible")
        # no arc of the fork spans a successor-closed pair
        assert not check_expansion_witness(arc, fork, "admissible")

    def test_size_limit(self):
        with pytest.raises(ValueError):
            check_expansion_witness(POINT, path_graph(8), "order")

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=2), graphs(min_n=1, max_n=4), st.data())
    def test_monotone_along_strong_extension(self, A, B, data):
        from sparsekit.orientation import in_C1
        if not (in_C1(A) and in_C1(B)):
            return
        vs = sorted(B.vertices)
        nbrs = data.draw(st.lists(st.sampled_from(vs), max_size=2, unique=True))
        new = max(vs) + 1
        B2 = Graph(set(vs) | {new}, set(B.edges) | {(u, new) for u in nbrs})
        assert is_le1(B.vertices, B2)
        if check_expansion_witness(A, B, "order"):
            assert check_expansion_witness(A, B2, "order")


class TestWap:
    def test_toy_class_is_exhausted(self):
        # graphs on at most 2 vertices: an edge and a non-edge over a point
        # need 3 vertices to amalgamate
        toy = class_sample("induced", 2)
        result = search_wap_witness(POINT, toy, b_bound=1, c_bound=2)
        assert not result.found and result.exhausted

    def test_ordered_class_has_a_witness(self):
        sample = class_sample("le1_ordered", 4)
        result = search_wap_witness(OrderedGraph(POINT, [0]), sample, b_bound=1, c_bound=2)
        assert result.found and not result.exhausted

    def test_vacuous_witness(self):
        sample = class_sample("induced", 1)
        result = search_wap_witness(POINT, sample, b_bound=1, c_bound=1)
        assert result.witness == POINT

    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            search_wap_witness(POINT, class_sample("induced", 1), b_bound=7)


def test_exhaustive_orientation_counts_are_deterministic():
    G = cycle_graph(4)
    first = [sorted(D.arcs) for D in enumerate_acyclic_orientations(G, 2)]
    second = [sorted(D.arcs) for D in enumerate_acyclic_orientations(G, 2)]
    assert first == second
    assert len(first) == sum(1 for _ in itertools.product((0, 1), repeat=4)) - 2
