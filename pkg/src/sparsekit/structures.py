"""Finite graphs, oriented graphs and ordered graphs over integer vertex ids.

All structures are immutable values.  Vertex ids are non-negative integers and
every structure carries its vertex set explicitly, so two structures can share
ids (this is how amalgamation overlaps are expressed).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

Edge = tuple[int, int]


class StructureError(ValueError):
    """Raised when a structure would violate its invariants."""


def _check_vertex(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise StructureError(f"vertex ids must be non-negative integers, got {v!r}")
    return v


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph; edges stored as sorted pairs."""

    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()):
        vs = frozenset(_check_vertex(v) for v in vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise StructureError(f"loop at vertex {u}")
            if u not in vs or v not in vs:
                raise StructureError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            es.add(edge_key(u, v))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Graph(vertices={sorted(self.vertices)}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class OrientedGraph:
    """A graph with a direction chosen for every edge (no loops, no 2-cycles)."""

    vertices: frozenset[int]
    arcs: frozenset[Edge]

    def __init__(self, vertices: Iterable[int] = (), arcs: Iterable[Edge] = ()):
        vs = frozenset(_check_vertex(v) for v in vertices)
        arcset = set()
        for u, v in arcs:
            if u == v:
                raise StructureError(f"loop at vertex {u}")
            if u not in vs or v not in vs:
                raise StructureError(f"arc ({u}, {v}) has an endpoint outside the vertex set")
            if (v, u) in arcset:
                raise StructureError(f"arcs ({u}, {v}) and ({v}, {u}) orient the same edge twice")
            arcset.add((u, v))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arcs", frozenset(arcset))

    @cached_property
    def succ(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            out[u].add(v)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def pred(self) -> dict[int, frozenset[int]]:
        inn: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            inn[v].add(u)
        return {v: frozenset(s) for v, s in inn.items()}

    def out_degree(self, v: int) -> int:
        return len(self.succ[v])

    def reduct(self) -> Graph:
        return Graph(self.vertices, self.arcs)

    def reverse(self) -> OrientedGraph:
        return OrientedGraph(self.vertices, ((v, u) for u, v in self.arcs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"OrientedGraph(vertices={sorted(self.vertices)}, arcs={sorted(self.arcs)})"


@dataclass(frozen=True)
class OrderedGraph:
    """A graph or oriented graph together with a linear order on its vertices.

    ``order[i]`` is the vertex of rank ``i``.
    """

    graph: Union[Graph, OrientedGraph]
    order: tuple[int, ...]

    def __init__(self, graph: Graph | OrientedGraph, order: Iterable[int]):
        order = tuple(order)
        if len(set(order)) != len(order) or set(order) != graph.vertices:
            raise StructureError("order must list every vertex exactly once")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "order", order)

    @property
    def vertices(self) -> frozenset[int]:
        return self.graph.vertices

    @cached_property
    def rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def precedes(self, u: int, v: int) -> bool:
        return self.rank[u] < self.rank[v]

    @property
    def oriented(self) -> bool:
        return isinstance(self.graph, OrientedGraph)

    def __len__(self) -> int:
        return len(self.order)


Structure = Union[Graph, OrientedGraph, OrderedGraph]


class Strength(enum.Enum):
    PLAIN = "plain"
    SUCCESSOR_CLOSED = "successor_closed"
    LE1 = "le1"
    ORDERED = "ordered"


@dataclass(frozen=True)
class Embedding:
    """An injective vertex map, tagged with the embedding notion it satisfies."""

    map: Mapping[int, int]
    strength: Strength = Strength.PLAIN

    def __call__(self, v: int) -> int:
        return self.map[v]

    def image(self) -> frozenset[int]:
        return frozenset(self.map.values())


def is_embedding(f: Mapping[int, int], X: Structure, Y: Structure) -> bool:
    """Whether ``f`` is injective and preserves and reflects edges, arcs and order."""
    if set(f) != set(X.vertices) or len(set(f.values())) != len(f):
        return False
    if not set(f.values()) <= Y.vertices:
        return False
    if isinstance(X, OrderedGraph):
        if not isinstance(Y, OrderedGraph):
            return False
        ranks = [Y.rank[f[v]] for v in X.order]
        if ranks != sorted(ranks):
            return False
        return is_embedding(f, X.graph, Y.graph)
    if isinstance(Y, OrderedGraph):
        return False
    xs = sorted(X.vertices)
    if isinstance(X, OrientedGraph):
        if not isinstance(Y, OrientedGraph):
            return False
        for u in xs:
            for v in xs:
                if u != v and ((u, v) in X.arcs) != ((f[u], f[v]) in Y.arcs):
                    return False
        return True
    if not isinstance(Y, Graph):
        return False
    for i, u in enumerate(xs):
        for v in xs[i + 1:]:
            if X.has_edge(u, v) != Y.has_edge(f[u], f[v]):
                return False
    return True


def induced_substructure(S: Structure, V: Iterable[int]) -> Structure:
    """Restrict ``S`` to the vertex set ``V``."""
    V = frozenset(V)
    unknown = V - S.vertices
    if unknown:
        raise StructureError(f"unknown vertex ids {sorted(unknown)}")
    if isinstance(S, Graph):
        return Graph(V, (e for e in S.edges if e[0] in V and e[1] in V))
    if isinstance(S, OrientedGraph):
        return OrientedGraph(V, (a for a in S.arcs if a[0] in V and a[1] in V))
    if isinstance(S, OrderedGraph):
        return OrderedGraph(induced_substructure(S.graph, V), (v for v in S.order if v in V))
    raise TypeError(f"not a structure: {type(S).__name__}")


def relabel(S: Structure, mapping: Mapping[int, int]) -> Structure:
    """Rename vertices through an injective ``mapping`` defined on all of ``S``."""
    if len(set(mapping[v] for v in S.vertices)) != len(S.vertices):
        raise StructureError("relabelling is not injective")
    if isinstance(S, Graph):
        return Graph((mapping[v] for v in S.vertices),
                     ((mapping[u], mapping[v]) for u, v in S.edges))
    if isinstance(S, OrientedGraph):
        return OrientedGraph((mapping[v] for v in S.vertices),
                             ((mapping[u], mapping[v]) for u, v in S.arcs))
    if isinstance(S, OrderedGraph):
        return OrderedGraph(relabel(S.graph, mapping), (mapping[v] for v in S.order))
    raise TypeError(f"not a structure: {type(S).__name__}")


def normalize_ids(S: Structure) -> tuple[Structure, dict[int, int]]:
    """Relabel to ``0..n-1`` preserving the relative order of ids."""
    mapping = {v: i for i, v in enumerate(sorted(S.vertices))}
    return relabel(S, mapping), mapping


def free_amalgam(B0: Graph | OrientedGraph, B1: Graph | OrientedGraph,
                 A: Iterable[int] | None = None) -> Graph | OrientedGraph:
    """Free amalgam of ``B0`` and ``B1`` over their common vertices.

    The overlap is expressed by shared ids.  If ``A`` is given it must equal the
    intersection of the two vertex sets.  No edges are added between
    ``B0 - A`` and ``B1 - A``.
    """
    if type(B0) is not type(B1) or not isinstance(B0, (Graph, OrientedGraph)):
        raise TypeError("free_amalgam needs two graphs or two oriented graphs")
    common = B0.vertices & B1.vertices
    if A is not None and frozenset(A) != common:
        raise StructureError("A must be exactly the intersection of the two vertex sets")
    if induced_substructure(B0, common) != induced_substructure(B1, common):
        raise StructureError("the two factors induce different structures on the overlap")
    if isinstance(B0, Graph):
        return Graph(B0.vertices | B1.vertices, B0.edges | B1.edges)
    return OrientedGraph(B0.vertices | B1.vertices, B0.arcs | B1.arcs)


def vertex_set(S: Structure) -> frozenset[int]:
    return S.vertices


def underlying_graph(S: Structure) -> Graph:
    if isinstance(S, OrderedGraph):
        S = S.graph
    if isinstance(S, OrientedGraph):
        return S.reduct()
    return S


# Small named graphs used throughout the tests and the CLI corpus.

def complete_graph(n: int) -> Graph:
    return Graph(range(n), ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    """Star with centre 0 and leaves ``1..leaves``."""
    return Graph(range(leaves + 1), ((0, i) for i in range(1, leaves + 1)))
