"""Admissible orderings of acyclic 2-oriented graphs.

The fixed order on isomorphism types of ordered closure-extensions compares
size first and then the canonical key of the ordered closure.  An order is
admissible when

* a vertex whose ordered closure has the smaller type comes first, and
* between vertices with isomorphic ordered closures, the one whose base
  (closure minus the vertex) is lexicographically smaller comes first,

where bases are compared as ascending sequences in the order itself.  Such an
order is exactly a sort of the vertices by (closure type, base position
sequence), with ties left only between homologous vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .canon import canonical_form
from .closure import closed_subsets, is_successor_closed, scl
from .hierarchy import head_of
from .orientation import in_D1
from .structures import OrderedGraph, OrientedGraph, induced_substructure


@dataclass(frozen=True, order=True)
class TriOrderKey:
    size: int
    tie_key: bytes


@dataclass
class AdmissibleReport:
    passes_closure_under_substructures: bool
    passes_condition3: bool
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passes_closure_under_substructures and self.passes_condition3

    def __bool__(self) -> bool:
        return self.ok


def tri_key(X: OrderedGraph) -> TriOrderKey:
    """Position of an ordered closure-extension in the fixed type order."""
    if not X.oriented:
        raise ValueError("ordered closure-extensions carry an orientation")
    if head_of(X.graph) is None:
        raise ValueError("not a closure-extension")
    return TriOrderKey(len(X), canonical_form(X).key)


def tri_compare(X: OrderedGraph, Y: OrderedGraph) -> int:
    """-1, 0 or 1 as ``X`` is below, isomorphic to, or above ``Y``."""
    kx, ky = tri_key(X), tri_key(Y)
    return (kx > ky) - (kx < ky)


def _closure_keys(D: OrientedGraph, rank: dict[int, int]):
    """Per-vertex (type key, base rank sequence) under the order given by ``rank``."""
    keys = {}
    for v in D.vertices:
        closed = scl(D, [v])
        ordered = OrderedGraph(induced_substructure(D, closed), sorted(closed, key=rank.__getitem__))
        keys[v] = (TriOrderKey(len(closed), canonical_form(ordered).key),
                   tuple(sorted(rank[u] for u in closed if u != v)))
    return keys


def _require_D1(D: OrientedGraph):
    if not isinstance(D, OrientedGraph) or not in_D1(D):
        raise ValueError("expected an acyclic 2-oriented graph")


def build_admissible_order(D: OrientedGraph) -> OrderedGraph:
    """Canonical admissible order on ``D``; homologous ties go to the lower id.

    Vertices are placed in rounds of increasing closure size.  Everything in a
    vertex's base has a strictly smaller closure, so it is already ranked when
    the vertex's ordered closure and base sequence are computed.
    """
    _require_D1(D)
    closures = {v: scl(D, [v]) for v in D.vertices}
    by_size: dict[int, list[int]] = {}
    for v, c in closures.items():
        by_size.setdefault(len(c), []).append(v)
    rank: dict[int, int] = {}
    order: list[int] = []
    for size in sorted(by_size):
        keyed = []
        for v in by_size[size]:
            base_sorted = sorted((u for u in closures[v] if u != v), key=rank.__getitem__)
            ordered = OrderedGraph(induced_substructure(D, closures[v]), base_sorted + [v])
            keyed.append((canonical_form(ordered).key, tuple(rank[u] for u in base_sorted), v))
        keyed.sort()
        for _, _, v in keyed:
            rank[v] = len(order)
            order.append(v)
    return OrderedGraph(D, order)


def _resolve(A: OrderedGraph, D: OrientedGraph | None) -> OrientedGraph:
    if D is None:
        if not A.oriented:
            raise ValueError("the orientation must be supplied alongside an ordered graph")
        D = A.graph
    elif D.vertices != A.vertices or (not A.oriented and D.reduct() != A.graph):
        raise ValueError("orientation does not match the ordered graph")
    _require_D1(D)
    return D


def condition3_violations(D: OrientedGraph, order: Sequence[int],
                          within: Iterable[int] | None = None) -> list[tuple[int, int, str]]:
    vs = sorted(D.vertices if within is None else within)
    vset = set(vs)
    sub = induced_substructure(D, vs)
    rank = {v: i for i, v in enumerate(v for v in order if v in vset)}
    keys = _closure_keys(sub, rank)
    found = []
    for u in vs:
        for v in vs:
            if u == v or rank[u] < rank[v]:
                continue
            (ku, bu), (kv, bv) = keys[u], keys[v]
            # here v precedes u; flag when u should have come first
            if ku < kv:
                found.append((u, v, "closure type of u is below that of v but v comes first"))
            elif ku == kv and bu < bv:
                found.append((u, v, "isomorphic closures, base of u is lexicographically "
                                    "first but v comes first"))
    return found


def check_admissible(A: OrderedGraph, D: OrientedGraph | None = None,
                     hereditary: bool = True, exhaustive_bound: int = 12) -> AdmissibleReport:
    """Check the ordering conditions on ``A`` and on its successor-closed restrictions.

    The restrictions checked are all successor-closed subsets when ``A`` has at
    most ``exhaustive_bound`` vertices, else the closures of single vertices and
    of pairs.
    """
    D = _resolve(A, D)
    order = A.order
    violations = condition3_violations(D, order)
    passes3 = not violations
    passes2 = True
    if hereditary:
        if len(D.vertices) <= exhaustive_bound:
            subsets = closed_subsets(D)
        else:
            vs = sorted(D.vertices)
            subsets = {scl(D, [v]) for v in vs}
            subsets |= {scl(D, [u, v]) for u, v in itertools.combinations(vs, 2)}
            subsets = sorted(subsets, key=lambda s: (len(s), sorted(s)))
        for S in subsets:
            if len(S) < 2 or len(S) == len(D.vertices):
                continue
            sub = condition3_violations(D, order, S)
            if sub:
                passes2 = False
                violations.extend((u, v, f"in restriction to {sorted(S)}: {why}")
                                  for u, v, why in sub)
    return AdmissibleReport(passes2, passes3, violations)


def is_admissible(D: OrientedGraph, order: Sequence[int]) -> bool:
    return not condition3_violations(D, order)


def base_precedence_holds(A: OrderedGraph, D: OrientedGraph | None = None) -> bool:
    """Every vertex of a base precedes the vertex it is the base of."""
    D = A.graph if D is None else D
    rank = A.rank
    return all(rank[b] < rank[a] for a in D.vertices for b in scl(D, [a]) if b != a)


def extend_admissible_order(D: OrientedGraph, prefix: Sequence[int]) -> OrderedGraph:
    """Extend an admissible order on a successor-closed part of ``D`` to all of ``D``.

    New vertices are inserted in order of closure size at the slot their
    (closure type, base sequence) key dictates; among homologous vertices a new
    vertex goes last.  Existing relative order is never changed.
    """
    _require_D1(D)
    placed = list(prefix)
    if not is_successor_closed(D, placed):
        raise ValueError("the ordered part must be successor-closed")
    if condition3_violations(D, placed, placed):
        raise ValueError("the given order on the part is not admissible")
    closures = {v: scl(D, [v]) for v in D.vertices}
    todo = sorted(D.vertices - set(placed), key=lambda v: (len(closures[v]), v))
    type_key = {}

    def compute_type(v, rank):
        ordered = OrderedGraph(induced_substructure(D, closures[v]),
                               sorted(closures[v], key=rank.__getitem__))
        return TriOrderKey(len(closures[v]), canonical_form(ordered).key)

    rank = {v: i for i, v in enumerate(placed)}
    for v in placed:
        type_key[v] = compute_type(v, rank)
    for u in todo:
        rank = {v: i for i, v in enumerate(placed)}
        rank[u] = len(placed)
        type_key[u] = compute_type(u, rank)
        u_base = sorted(rank[w] for w in closures[u] if w != u)
        slot = len(placed)
        for i, w in enumerate(placed):
            if type_key[w] < type_key[u]:
                continue
            if type_key[w] == type_key[u]:
                w_base = sorted(rank[x] for x in closures[w] if x != w)
                if w_base <= u_base:
                    continue
            slot = i
            break
        placed.insert(slot, u)
    return OrderedGraph(D, placed)


def _successors_first(D: OrientedGraph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    return all(pos[v] < pos[u] for u, v in D.arcs)


def _orders_extending(vertices: Sequence[int], fixed: Sequence[int]):
    """All linear orders of ``vertices`` whose restriction to ``fixed`` is ``fixed``."""
    fixed_set = set(fixed)
    free = [v for v in vertices if v not in fixed_set]
    n = len(vertices)
    for positions in itertools.combinations(range(n), len(fixed)):
        for perm in itertools.permutations(free):
            order = [None] * n
            for p, v in zip(positions, fixed):
                order[p] = v
            it = iter(perm)
            yield [x if x is not None else next(it) for x in order]


def check_extension_condition(parts: Sequence[Iterable[int]], joint_order: Sequence[int],
                              B: OrientedGraph, max_size: int = 8) -> bool:
    """Brute-force the amalgamation condition on admissible orders.

    ``parts`` are successor-closed subsets of ``B`` ordered jointly by
    ``joint_order`` (a sequence over their union).  Returns whether some
    admissible order on ``B`` extends ``joint_order``.
    """
    _require_D1(B)
    if len(B.vertices) > max_size:
        raise ValueError(f"B has {len(B.vertices)} vertices; the search is limited to {max_size}")
    parts = [frozenset(p) for p in parts]
    union = frozenset().union(*parts) if parts else frozenset()
    if set(joint_order) != union or len(joint_order) != len(union):
        raise ValueError("joint order must list the union of the parts exactly once")
    for p in parts:
        if not is_successor_closed(B, p):
            raise ValueError(f"part {sorted(p)} is not successor-closed in B")
        if condition3_violations(B, joint_order, p):
            raise ValueError(f"part {sorted(p)} is not admissibly ordered")
    if condition3_violations(B, joint_order, union):
        raise ValueError("joint order violates the ordering condition on the union")
    for order in _orders_extending(sorted(B.vertices), list(joint_order)):
        # base precedence is necessary, and cheap to test first
        if _successors_first(B, order) and not condition3_violations(B, order):
            return True
    return False
