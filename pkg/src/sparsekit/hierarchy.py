"""Levels, cones of homologous vertices and closure-extensions of acyclic digraphs."""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_form
from .closure import scl
from .orientation import has_directed_cycle
from .structures import OrientedGraph, StructureError, induced_substructure


@dataclass(frozen=True)
class ClosureResult:
    closed_set: frozenset[int]
    is_closure_extension: bool
    head: int | None
    base: frozenset[int]


def _require_acyclic(D: OrientedGraph):
    if has_directed_cycle(D):
        raise ValueError("levels and cones are only defined for acyclic digraphs")


def topological_sinks_first(D: OrientedGraph) -> list[int]:
    """Vertices ordered so that every successor precedes its predecessors."""
    pending = {v: len(D.succ[v]) for v in D.vertices}
    ready = sorted(v for v, n in pending.items() if n == 0)
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for u in D.pred[v]:
            pending[u] -= 1
            if pending[u] == 0:
                ready.append(u)
    if len(order) != len(D.vertices):
        raise ValueError("directed cycle present")
    return order


def levels(D: OrientedGraph) -> dict[int, int]:
    """Level of each vertex: 0 for sinks, else one more than the highest level below it.

    The highest level inside ``scl(a) - {a}`` is always attained at an out-neighbour,
    so this is the length of the longest directed path leaving ``a``.
    """
    _require_acyclic(D)
    lvl: dict[int, int] = {}
    for v in topological_sinks_first(D):
        lvl[v] = 1 + max((lvl[w] for w in D.succ[v]), default=-1)
    return lvl


def level_classes(D: OrientedGraph) -> dict[int, frozenset[int]]:
    by_level: dict[int, set[int]] = {}
    for v, n in levels(D).items():
        by_level.setdefault(n, set()).add(v)
    return {n: frozenset(vs) for n, vs in sorted(by_level.items())}


def base(D: OrientedGraph, a: int) -> frozenset[int]:
    return scl(D, [a]) - {a}


def closure_extension_of(D: OrientedGraph, a: int) -> ClosureResult:
    if a not in D.vertices:
        raise StructureError(f"unknown vertex id {a}")
    closed = scl(D, [a])
    return ClosureResult(closed, True, a, closed - {a})


def head_of(D: OrientedGraph) -> int | None:
    """The head vertex if ``D`` is a closure-extension, else ``None``."""
    heads = [v for v in D.vertices if scl(D, [v]) == D.vertices]
    if len(heads) == 1:
        return heads[0]
    if len(heads) > 1:
        # only possible with a directed cycle
        raise ValueError("several vertices generate the whole digraph")
    return None


def homology_key(D: OrientedGraph, a: int):
    """Key shared exactly by homologous vertices: the base and the base-pinned closure type."""
    closed = scl(D, [a])
    a_base = closed - {a}
    pins = {v: ("base", v) for v in a_base}
    return tuple(sorted(a_base)), canonical_form(induced_substructure(D, closed), pins,
                                                 max_size=len(closed))


def cones(D: OrientedGraph) -> list[frozenset[int]]:
    """Partition of the vertices into cones (classes of homologous vertices)."""
    _require_acyclic(D)
    groups: dict = {}
    for v in sorted(D.vertices):
        groups.setdefault(homology_key(D, v), []).append(v)
    return sorted((frozenset(g) for g in groups.values()), key=lambda c: min(c))


def cone_of(D: OrientedGraph, a: int) -> frozenset[int]:
    key = homology_key(D, a)
    return frozenset(v for v in D.vertices if homology_key(D, v) == key)
