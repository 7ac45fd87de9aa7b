"""Sparsity, bounded out-degree orientations and the classes C0, C1, D0, D1."""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Mapping, Union

from .structures import Graph, OrientedGraph, edge_key

CapacityMap = Union[int, Mapping[int, int]]


class OrientationFailure(Exception):
    """No orientation within the capacities exists.

    ``witness`` is a vertex set certifying this: for ``find_orientation`` it
    spans more edges than its total capacity, for ``find_acyclic_orientation``
    every member has more neighbours inside it than its capacity.
    """

    def __init__(self, witness: Iterable[int], message: str = ""):
        self.witness = frozenset(witness)
        super().__init__(message or f"no orientation; witness {sorted(self.witness)}")


def capacities(G: Graph, cap: CapacityMap) -> dict[int, int]:
    if isinstance(cap, int):
        if cap < 0:
            raise ValueError("capacities must be non-negative")
        return {v: cap for v in G.vertices}
    missing = G.vertices - set(cap)
    if missing:
        raise ValueError(f"no capacity given for vertices {sorted(missing)}")
    caps = {v: cap[v] for v in G.vertices}
    if any(c < 0 for c in caps.values()):
        raise ValueError("capacities must be non-negative")
    return caps


def find_orientation(G: Graph, cap: CapacityMap) -> OrientedGraph:
    """Orient ``G`` with out-degree at most ``cap(v)`` at every vertex.

    Starts from an arbitrary orientation and repairs overloaded vertices by
    reversing a directed path to a vertex with spare capacity.  When no such
    path exists the set reachable from the overloaded vertex is returned as
    the witness inside ``OrientationFailure``.
    """
    caps = capacities(G, cap)
    out: dict[int, set[int]] = {v: set() for v in G.vertices}
    for u, v in sorted(G.edges):
        out[u].add(v)
    overloaded = [v for v in sorted(G.vertices) if len(out[v]) > caps[v]]
    heapq.heapify(overloaded)
    while overloaded:
        x = overloaded[0]
        if len(out[x]) <= caps[x]:
            heapq.heappop(overloaded)
            continue
        parent = {x: None}
        queue = deque([x])
        target = None
        while queue and target is None:
            u = queue.popleft()
            for w in sorted(out[u]):
                if w in parent:
                    continue
                parent[w] = u
                if len(out[w]) < caps[w]:
                    target = w
                    break
                queue.append(w)
        if target is None:
            raise OrientationFailure(parent)
        w = target
        while parent[w] is not None:
            u = parent[w]
            out[u].discard(w)
            out[w].add(u)
            w = u
    return OrientedGraph(G.vertices, ((u, v) for u in out for v in out[u]))


def peel(adj: Mapping[int, Iterable[int]], vertices: Iterable[int],
         caps: Mapping[int, int]) -> tuple[list[int], set[int]]:
    """Repeatedly remove the lowest-id vertex whose remaining degree is within its cap.

    Returns the removal sequence and the (possibly empty) stuck remainder.
    """
    alive = set(vertices)
    deg = {v: sum(1 for u in adj[v] if u in alive) for v in alive}
    heap = [v for v in alive if deg[v] <= caps[v]]
    heapq.heapify(heap)
    queued = set(heap)
    removed: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        alive.discard(v)
        removed.append(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                if u not in queued and deg[u] <= caps[u]:
                    queued.add(u)
                    heapq.heappush(heap, u)
    return removed, alive


def peel_arcs(adj, removal: list[int]) -> list[tuple[int, int]]:
    """Arcs pointing from each peeled vertex to its neighbours peeled later."""
    when = {v: i for i, v in enumerate(removal)}
    return [(v, u) for v in removal for u in adj[v] if u in when and when[u] > when[v]]


def find_acyclic_orientation(G: Graph, cap: CapacityMap) -> OrientedGraph:
    """Acyclic orientation with out-degree at most ``cap(v)``, by peeling.

    Every arc points from an earlier-removed vertex to a later-removed one, so
    the result is acyclic.  If peeling gets stuck, the stuck vertex set is the
    witness: each of its vertices has more neighbours inside it than its cap.
    """
    caps = capacities(G, cap)
    removal, stuck = peel(G.adj, G.vertices, caps)
    if stuck:
        raise OrientationFailure(stuck)
    return OrientedGraph(G.vertices, peel_arcs(G.adj, removal))


def is_k_sparse(G: Graph, k: int) -> bool:
    """Every subgraph B has at most k|B| edges; decided through k-orientability."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    try:
        find_orientation(G, k)
    except OrientationFailure:
        return False
    return True


def has_acyclic_orientation(G: Graph, cap: CapacityMap) -> bool:
    removal, stuck = peel(G.adj, G.vertices, capacities(G, cap))
    return not stuck


def has_directed_cycle(D: OrientedGraph) -> bool:
    indeg = {v: len(D.pred[v]) for v in D.vertices}
    queue = deque(v for v in D.vertices if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in D.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen != len(D.vertices)


def max_out_degree(D: OrientedGraph) -> int:
    return max((len(s) for s in D.succ.values()), default=0)


def in_D0(D: OrientedGraph) -> bool:
    return max_out_degree(D) <= 2


def in_D1(D: OrientedGraph) -> bool:
    return in_D0(D) and not has_directed_cycle(D)


def in_C1(G: Graph) -> bool:
    return has_acyclic_orientation(G, 2)


def class_membership(S: Graph | OrientedGraph) -> frozenset[str]:
    """Which of C0, C1 (graphs) or D0, D1 (oriented graphs) contain ``S``."""
    labels = set()
    if isinstance(S, OrientedGraph):
        if in_D0(S):
            labels.add("D0")
            if not has_directed_cycle(S):
                labels.add("D1")
    elif isinstance(S, Graph):
        if is_k_sparse(S, 2):
            labels.add("C0")
        if in_C1(S):
            labels.add("C1")
    else:
        raise TypeError(f"class membership is defined for graphs and oriented graphs, "
                        f"not {type(S).__name__}")
    return frozenset(labels)


def edges_within(G: Graph, B: Iterable[int]) -> int:
    B = set(B)
    return sum(1 for u, v in G.edges if u in B and v in B)


def orientation_respects(D: OrientedGraph, G: Graph, caps: Mapping[int, int]) -> bool:
    """``D`` orients exactly the edges of ``G`` within the capacities."""
    if D.vertices != G.vertices or len(D.arcs) != len(G.edges):
        return False
    if {edge_key(u, v) for u, v in D.arcs} != G.edges:
        return False
    return all(len(D.succ[v]) <= caps[v] for v in D.vertices)
