"""Successor-closure, the strong-substructure relations and orders vs orientations."""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable

from .orientation import in_D1, peel, peel_arcs
from .structures import Graph, OrderedGraph, OrientedGraph, StructureError


def scl(D: OrientedGraph, B: Iterable[int]) -> frozenset[int]:
    """Least successor-closed superset of ``B`` (forward reachability)."""
    seen = set(B)
    unknown = seen - D.vertices
    if unknown:
        raise StructureError(f"unknown vertex ids {sorted(unknown)}")
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in D.succ[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def is_successor_closed(D: OrientedGraph, A: Iterable[int]) -> bool:
    A = set(A)
    unknown = A - D.vertices
    if unknown:
        raise StructureError(f"unknown vertex ids {sorted(unknown)}")
    return all(D.succ[v] <= A for v in A)


def _le1_peeling(A: frozenset[int], B: Graph):
    """Peeling sequences for ``A`` and for ``B - A`` under the forced cross arcs, or None."""
    adj = B.adj
    inside = {v: [u for u in adj[v] if u in A] for v in A}
    removal_a, stuck = peel(inside, A, dict.fromkeys(A, 2))
    if stuck:
        return None
    rest = B.vertices - A
    residual = {}
    for v in rest:
        r = 2 - sum(1 for u in adj[v] if u in A)
        if r < 0:
            return None
        residual[v] = r
    outside = {v: [u for u in adj[v] if u not in A] for v in rest}
    removal_b, stuck = peel(outside, rest, residual)
    if stuck:
        return None
    return inside, removal_a, outside, removal_b


def le1_orientation(A: Iterable[int], B: Graph) -> OrientedGraph | None:
    """An acyclic 2-orientation of ``B`` in which ``A`` is successor-closed, if any.

    Every edge between ``A`` and the rest is forced to point into ``A``; what
    remains is an acyclic 2-orientation of ``A`` and an acyclic orientation of
    ``B - A`` within the capacity left over by the forced arcs.
    """
    A = frozenset(A)
    if not A <= B.vertices:
        raise StructureError(f"unknown vertex ids {sorted(A - B.vertices)}")
    found = _le1_peeling(A, B)
    if found is None:
        return None
    inside, removal_a, outside, removal_b = found
    arcs = peel_arcs(inside, removal_a) + peel_arcs(outside, removal_b)
    arcs += [(v, u) for v in B.vertices - A for u in B.adj[v] if u in A]
    return OrientedGraph(B.vertices, arcs)


def is_le1(A: Iterable[int], B: Graph) -> bool:
    A = frozenset(A)
    if not A <= B.vertices:
        raise StructureError(f"unknown vertex ids {sorted(A - B.vertices)}")
    return _le1_peeling(A, B) is not None


def order_from_orientation(B: OrientedGraph, partial: OrderedGraph | None = None) -> OrderedGraph:
    """A linear order on ``B`` in which every vertex comes after all its successors.

    Ties go to the lowest id.  ``partial``, an order on part of ``B``, is kept:
    its consecutive vertices become extra precedence constraints.  The result
    orders the reduct of ``B``; orienting each edge from its later to its
    earlier endpoint gives back ``B``.
    """
    if not in_D1(B):
        raise ValueError("order_from_orientation needs an acyclic 2-orientation")
    before: dict[int, set[int]] = {v: set() for v in B.vertices}
    for u, v in B.arcs:
        before[u].add(v)
    if partial is not None:
        if not partial.vertices <= B.vertices:
            raise ValueError("partial order mentions vertices outside B")
        for a, b in zip(partial.order, partial.order[1:]):
            before[b].add(a)
    waiting = {v: len(before[v]) for v in B.vertices}
    after: dict[int, list[int]] = {v: [] for v in B.vertices}
    for v, earlier in before.items():
        for u in earlier:
            after[u].append(v)
    heap = [v for v, n in waiting.items() if n == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in after[v]:
            waiting[w] -= 1
            if waiting[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(B.vertices):
        raise ValueError("partial order is inconsistent with the reachability order of B")
    return OrderedGraph(B.reduct(), order)


def orientation_from_order(A: OrderedGraph) -> OrientedGraph | None:
    """Orient each edge from its later to its earlier endpoint.

    Returns ``None`` when some vertex would get out-degree above 2, i.e. when
    the order does not induce a 2-orientation.  The result is always acyclic.
    """
    g = A.graph
    edges = g.arcs if isinstance(g, OrientedGraph) else g.edges
    rank = A.rank
    arcs = [(u, v) if rank[u] > rank[v] else (v, u) for u, v in edges]
    D = OrientedGraph(A.vertices, arcs)
    if any(len(s) > 2 for s in D.succ.values()):
        return None
    return D


def closed_subsets(D: OrientedGraph, max_size: int | None = None) -> list[frozenset[int]]:
    """All successor-closed vertex sets of ``D`` (optionally up to ``max_size``)."""
    limit = len(D.vertices) if max_size is None else max_size
    found = {frozenset()}
    stack = [frozenset()]
    while stack:
        current = stack.pop()
        for v in D.vertices - current:
            nxt = scl(D, current | {v})
            if len(nxt) <= limit and nxt not in found:
                found.add(nxt)
                stack.append(nxt)
    return sorted(found, key=lambda s: (len(s), sorted(s)))
