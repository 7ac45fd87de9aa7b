"""Tree gadgets, tree attachment, witness ordered graphs and the 4-cycle test.

Heights follow the arc-level convention: the head has height 0 and the
leaves of the binary tree for parameter q have height 2q+1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .admissible import build_admissible_order
from .closure import is_le1, is_successor_closed
from .hierarchy import levels
from .orientation import in_D1
from .structures import Graph, OrderedGraph, OrientedGraph, StructureError, induced_substructure

KINDS = ("T0", "T1")
WITNESS_COPIES = 10


@dataclass(frozen=True)
class TreeGadget:
    digraph: OrientedGraph
    head: int
    q: int
    kind: str
    height_of: dict[int, int]
    meeting_vertex: int | None = None


@dataclass(frozen=True)
class AttachedComplex:
    digraph: OrientedGraph
    base: frozenset[int]
    tree_region: frozenset[int]
    copies: dict[int, dict[int, int]]
    tree: TreeGadget

    @property
    def tree_arcs(self) -> frozenset[tuple[int, int]]:
        arcs = set()
        for m in self.copies.values():
            arcs.update((m[u], m[v]) for u, v in self.tree.digraph.arcs)
        return frozenset(arcs)

    def non_leaf_tree_vertices(self) -> list[int]:
        """Tree vertices with out-degree 2, in level-nondecreasing order (ties by id)."""
        lvl = levels(self.digraph)
        found = {m[t] for m in self.copies.values() for t in self.tree.digraph.vertices
                 if self.tree.digraph.succ[t]}
        return sorted(found, key=lambda v: (lvl[v], v))


@dataclass(frozen=True)
class WitnessOrderedGraph:
    ordered_graph: OrderedGraph
    base_complex: AttachedComplex
    witness_map: dict[int, tuple[int, ...]]
    orientation: OrientedGraph | None = None


@dataclass
class WitnessReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _heap_height(i: int) -> int:
    return (i + 1).bit_length() - 1


def _heap_descendant(r: int, depth: int, offset: int) -> int:
    return (r + 1) * (1 << depth) - 1 + offset


def build_tree(kind: str, q: int) -> TreeGadget:
    """Binary out-tree of height 2q+1 (``T0``) or its near-tree variant (``T1``).

    ``T1`` identifies the closures of the leftmost height-(q+2) descendants of
    the two children of the leftmost height-q vertex, which creates an
    undirected 4-cycle through that height-q vertex.
    """
    if kind not in KINDS:
        raise ValueError(f"tree kind must be one of {KINDS}, got {kind!r}")
    if not isinstance(q, int) or q < 1:
        raise ValueError("q must be a positive integer")
    height = 2 * q + 1
    n = (1 << (height + 1)) - 1
    arcs = [(i, c) for i in range(n) for c in (2 * i + 1, 2 * i + 2) if c < n]
    if kind == "T0":
        return TreeGadget(OrientedGraph(range(n), arcs), 0, q, kind,
                          {i: _heap_height(i) for i in range(n)})
    meet = (1 << q) - 1
    left, right = 2 * meet + 1, 2 * meet + 2
    x, y = 2 * left + 1, 2 * right + 1
    merge = {}
    for d in range(height - (q + 2) + 1):
        for j in range(1 << d):
            merge[_heap_descendant(y, d, j)] = _heap_descendant(x, d, j)
    merged_arcs = {(merge.get(u, u), merge.get(v, v)) for u, v in arcs}
    kept = sorted(set(range(n)) - set(merge))
    relabel = {v: i for i, v in enumerate(kept)}
    digraph = OrientedGraph(range(len(kept)), ((relabel[u], relabel[v]) for u, v in merged_arcs))
    return TreeGadget(digraph, 0, q, kind, {relabel[v]: _heap_height(v) for v in kept},
                      meeting_vertex=relabel[meet])


def pad_outdegrees(B: OrientedGraph) -> OrientedGraph:
    """Give every out-degree-1 vertex a fresh sink, so all out-degrees are 0 or 2."""
    if not in_D1(B):
        raise ValueError("pad_outdegrees needs an acyclic digraph with out-degrees at most 2")
    fresh = max(B.vertices, default=-1) + 1
    vertices = set(B.vertices)
    arcs = set(B.arcs)
    for v in sorted(B.vertices):
        if len(B.succ[v]) == 1:
            vertices.add(fresh)
            arcs.add((v, fresh))
            fresh += 1
    return OrientedGraph(vertices, arcs)


def attach_trees(C: OrientedGraph, kind: str, q: int) -> AttachedComplex:
    """Hang a copy of the tree gadget on every sink of ``C``, head identified with the sink."""
    if not in_D1(C):
        raise ValueError("C must be an acyclic 2-oriented graph")
    bad = [v for v in sorted(C.vertices) if len(C.succ[v]) not in (0, 2)]
    if bad:
        raise ValueError(f"vertices {bad} have out-degree other than 0 or 2")
    tree = build_tree(kind, q)
    fresh = max(C.vertices, default=-1) + 1
    vertices = set(C.vertices)
    arcs = set(C.arcs)
    copies: dict[int, dict[int, int]] = {}
    region = set()
    for sink in sorted(v for v in C.vertices if not C.succ[v]):
        m = {tree.head: sink}
        for t in sorted(tree.digraph.vertices):
            if t != tree.head:
                m[t] = fresh
                fresh += 1
        copies[sink] = m
        vertices.update(m.values())
        region.update(m.values())
        arcs.update((m[u], m[v]) for u, v in tree.digraph.arcs)
    D = OrientedGraph(vertices, arcs)
    return AttachedComplex(D, frozenset(C.vertices), frozenset(region), copies, tree)


def reorient_toward_head(X: AttachedComplex) -> OrientedGraph:
    """Reverse every tree arc so each copy points at its head; ``C`` is left as is.

    The base ``C`` is then successor-closed, which certifies that it is
    1-strong in the graph reduct.
    """
    tree_arcs = X.tree_arcs
    arcs = [(v, u) if (u, v) in tree_arcs else (u, v) for u, v in X.digraph.arcs]
    D = OrientedGraph(X.digraph.vertices, arcs)
    if not in_D1(D):
        raise RuntimeError("reoriented complex is not an acyclic 2-orientation")
    if not is_successor_closed(D, X.base):
        raise RuntimeError("base is not successor-closed in the reoriented complex")
    return D


def build_witness_shape(X: AttachedComplex) -> WitnessOrderedGraph:
    """Add ten witness copies for each non-leaf tree vertex and order the result.

    A witness copy of ``v`` is a fresh vertex joined to the out-neighbours of
    ``v``, i.e. a copy of the closure of ``v`` amalgamated over its base.  The
    order is the canonical admissible order of the orientation in which every
    witness points at those out-neighbours, rearranged inside each cone so
    that five witnesses sit below ``v`` and five above.
    """
    D = X.digraph
    fresh = max(D.vertices, default=-1) + 1
    witnesses: dict[int, list[int]] = {}
    tau_arcs = set(D.arcs)
    for v in X.non_leaf_tree_vertices():
        ws = list(range(fresh, fresh + WITNESS_COPIES))
        fresh += WITNESS_COPIES
        witnesses[v] = ws
        tau_arcs.update((w, x) for w in ws for x in D.succ[v])
    tau = OrientedGraph(set(D.vertices).union(*witnesses.values()), tau_arcs)
    order = list(build_admissible_order(tau).order)
    rank = {u: i for i, u in enumerate(order)}
    half = WITNESS_COPIES // 2
    witness_map = {}
    for v, ws in witnesses.items():
        slots = sorted(rank[u] for u in [v] + ws)
        below, above = ws[:half], ws[half:]
        for slot, u in zip(slots, below + [v] + above):
            order[slot] = u
        witness_map[v] = tuple(below + above)
    return WitnessOrderedGraph(OrderedGraph(tau.reduct(), order), X, witness_map, tau)


def check_witness(W: WitnessOrderedGraph) -> WitnessReport:
    """Check the witness-graph shape, the 1-strongness of the base, and the order pattern."""
    report = WitnessReport()
    bad = report.violations
    X = W.base_complex
    D = X.digraph
    G = W.ordered_graph.graph
    if not isinstance(G, Graph):
        G = G.reduct()
    expected = set(X.non_leaf_tree_vertices())
    if set(W.witness_map) != expected:
        missing = sorted(expected - set(W.witness_map))
        extra = sorted(set(W.witness_map) - expected)
        bad.append(f"witness map keys differ from non-leaf tree vertices "
                   f"(missing {missing}, unexpected {extra})")
    all_w: list[int] = [w for ws in W.witness_map.values() for w in ws]
    if len(set(all_w)) != len(all_w):
        bad.append("a witness vertex is listed twice")
    if set(all_w) & D.vertices:
        bad.append("witness vertices overlap the attached complex")
    if G.vertices != D.vertices | set(all_w):
        bad.append("vertex set is not the complex plus the witness vertices")
        return report
    if induced_substructure(G, D.vertices) != D.reduct():
        bad.append("removing the witnesses does not give back the reduct of the complex")
    rank = W.ordered_graph.rank
    for v, ws in sorted(W.witness_map.items()):
        if len(ws) != WITNESS_COPIES:
            bad.append(f"vertex {v} has {len(ws)} witness copies instead of {WITNESS_COPIES}")
        if v not in D.vertices:
            continue
        for w in ws:
            if G.adj[w] != D.succ[v]:
                bad.append(f"witness {w} of {v} is not a copy of its closure over the base")
        if len(ws) == WITNESS_COPIES:
            half = WITNESS_COPIES // 2
            chain = list(ws[:half]) + [v] + list(ws[half:])
            ranks = [rank[u] for u in chain]
            if ranks != sorted(ranks):
                bad.append(f"order around {v} is not five witnesses below and five above")
    if not is_le1(X.base, G):
        bad.append("the base is not 1-strong in the witness graph")
    return report


def reachable_set(D: OrientedGraph, d: int, n: int) -> frozenset[int]:
    """Vertices reachable from ``d`` by a directed path of length at most ``n``."""
    if d not in D.vertices:
        raise StructureError(f"unknown vertex id {d}")
    if n < 0:
        raise ValueError("radius must be non-negative")
    dist = {d: 0}
    queue = deque([d])
    while queue:
        v = queue.popleft()
        if dist[v] == n:
            continue
        for w in D.succ[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return frozenset(dist)


def has_undirected_cycle(G: Graph) -> bool:
    parent = {v: v for v in G.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def find_four_cycle(G: Graph) -> tuple[int, int, int, int] | None:
    """Some undirected 4-cycle ``(a, b, c, d)``: two vertices with two common neighbours."""
    vs = sorted(G.vertices)
    for i, a in enumerate(vs):
        for c in vs[i + 1:]:
            common = sorted(G.adj[a] & G.adj[c])
            if len(common) >= 2:
                return (a, common[0], c, common[1])
    return None


def annulus(T: TreeGadget) -> Graph:
    """Undirected graph on the vertices at distance q..2q+1 from the head."""
    q = T.q
    outer = reachable_set(T.digraph, T.head, 2 * q + 1)
    inner = reachable_set(T.digraph, T.head, q - 1)
    return induced_substructure(T.digraph.reduct(), outer - inner)


def incompatibility_check(q: int) -> bool:
    """The region between radii q and 2q+1 is a forest in T0(q) but has a 4-cycle in T1(q)."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    tree_side = annulus(build_tree("T0", q))
    near_tree_side = annulus(build_tree("T1", q))
    return not has_undirected_cycle(tree_side) and find_four_cycle(near_tree_side) is not None

