"""Brute-force oracles and bounded verifiers for small structures.

Everything here is exponential and meant as a cross-check for the exact
procedures elsewhere in the package.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .admissible import check_admissible
from .canon import canonical_form
from .closure import is_le1, is_successor_closed
from .orientation import in_C1, in_D1
from .structures import (
    Graph,
    OrderedGraph,
    OrientedGraph,
    Structure,
    free_amalgam,
    induced_substructure,
    relabel,
    underlying_graph,
    vertex_set,
)

MAX_ENUMERATED_EDGES = 20
NOTIONS = ("le1", "scl", "le1_ordered", "induced")
EXPANSION_KINDS = ("order", "orientation", "admissible")


# ---------------------------------------------------------------- enumeration

def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on vertices ``0..n-1``."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(n), (p for i, p in enumerate(pairs) if mask >> i & 1))


def all_oriented_graphs(n: int) -> Iterator[OrientedGraph]:
    """Every labeled oriented graph (no antiparallel pairs) on ``0..n-1``."""
    pairs = list(itertools.combinations(range(n), 2))
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        arcs = [(u, v) if s == 1 else (v, u) for (u, v), s in zip(pairs, states) if s]
        yield OrientedGraph(range(n), arcs)


def random_d1(n: int, rng: random.Random, density: float = 0.7) -> OrientedGraph:
    """Random acyclic digraph with out-degree at most 2 on ``0..n-1``.

    A hidden random ranking makes it acyclic; each vertex picks up to two
    successors among the vertices ranked below it.
    """
    ranking = list(range(n))
    rng.shuffle(ranking)
    arcs = []
    for i, v in enumerate(ranking):
        below = ranking[:i]
        k = min(len(below), sum(rng.random() < density for _ in range(2)))
        arcs.extend((v, w) for w in rng.sample(below, k))
    return OrientedGraph(range(n), arcs)


def iter_acyclic_orientations(G: Graph, k: int) -> Iterator[OrientedGraph]:
    """Acyclic orientations of ``G`` with out-degree at most ``k``, by backtracking."""
    edges = sorted(G.edges)
    out: dict[int, set[int]] = {v: set() for v in G.vertices}

    def reaches(src: int, dst: int) -> bool:
        stack, seen = [src], {src}
        while stack:
            x = stack.pop()
            if x == dst:
                return True
            for y in out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def go(i: int):
        if i == len(edges):
            yield OrientedGraph(G.vertices, ((u, v) for u in out for v in out[u]))
            return
        a, b = edges[i]
        for u, v in ((a, b), (b, a)):
            if len(out[u]) < k and not reaches(v, u):
                out[u].add(v)
                yield from go(i + 1)
                out[u].discard(v)

    yield from go(0)


def enumerate_acyclic_orientations(G: Graph, k: int) -> list[OrientedGraph]:
    """All acyclic orientations with out-degree at most ``k``, in a fixed arc order."""
    if len(G.edges) > MAX_ENUMERATED_EDGES:
        raise ValueError(f"{len(G.edges)} edges; enumeration is limited to {MAX_ENUMERATED_EDGES}")
    return list(iter_acyclic_orientations(G, k))


def orientation_exists_bruteforce(G: Graph, k: int) -> bool:
    """Whether some (not necessarily acyclic) orientation has out-degree at most ``k``."""
    edges = sorted(G.edges)
    load = dict.fromkeys(G.vertices, 0)
    spare = k * len(G.vertices)

    def go(i: int) -> bool:
        nonlocal spare
        if len(edges) - i > spare:
            return False
        if i == len(edges):
            return True
        for u in edges[i]:
            if load[u] < k:
                load[u] += 1
                spare -= 1
                if go(i + 1):
                    return True
                load[u] -= 1
                spare += 1
        return False

    return go(0)


def sparse_by_counting(G: Graph, k: int) -> bool:
    """Every vertex subset spans at most ``k`` times its size in edges."""
    vs = sorted(G.vertices)
    index = {v: i for i, v in enumerate(vs)}
    edge_masks = [(1 << index[u]) | (1 << index[v]) for u, v in G.edges]
    for mask in range(1, 1 << len(vs)):
        inside = sum(1 for e in edge_masks if e & mask == e)
        if inside > k * bin(mask).count("1"):
            return False
    return True


def le1_by_enumeration(A: Iterable[int], B: Graph) -> bool:
    """Some acyclic 2-orientation of ``B`` leaves ``A`` successor-closed."""
    A = frozenset(A)
    return any(is_successor_closed(D, A) for D in iter_acyclic_orientations(B, 2))


# ------------------------------------------------------------------ embeddings

def _pair_relation(S: Structure):
    """Function giving the full relational type of an ordered pair of vertices."""
    rank = S.rank if isinstance(S, OrderedGraph) else None
    g = S.graph if isinstance(S, OrderedGraph) else S
    if isinstance(g, OrientedGraph):
        def rel(u, v):
            return (v in g.succ[u], u in g.succ[v], rank is not None and rank[u] < rank[v])
    else:
        def rel(u, v):
            return (g.has_edge(u, v), rank is not None and rank[u] < rank[v])
    return rel


def iter_embeddings(X: Structure, Y: Structure) -> Iterator[dict[int, int]]:
    """All injective maps ``X -> Y`` preserving and reflecting every relation."""
    if type(X) is not type(Y):
        return
    xs = list(X.order) if isinstance(X, OrderedGraph) else sorted(vertex_set(X))
    ys = sorted(vertex_set(Y))
    rx, ry = _pair_relation(X), _pair_relation(Y)
    f: dict[int, int] = {}
    used: set[int] = set()

    def go(i: int):
        if i == len(xs):
            yield dict(f)
            return
        x = xs[i]
        for y in ys:
            if y in used:
                continue
            if all(rx(x, p) == ry(y, f[p]) and rx(p, x) == ry(f[p], y) for p in xs[:i]):
                f[x] = y
                used.add(y)
                yield from go(i + 1)
                used.discard(y)
                del f[x]

    yield from go(0)


def is_strong_subset(notion: str, A: Iterable[int], S: Structure) -> bool:
    A = frozenset(A)
    if notion == "induced":
        return True
    if notion == "scl":
        g = S.graph if isinstance(S, OrderedGraph) else S
        return is_successor_closed(g, A)
    if notion in ("le1", "le1_ordered"):
        return is_le1(A, underlying_graph(S))
    raise ValueError(f"unknown strong-embedding notion {notion!r}")


def strong_subsets(notion: str, S: Structure) -> list[frozenset[int]]:
    vs = sorted(vertex_set(S))
    found = []
    for r in range(len(vs) + 1):
        for A in itertools.combinations(vs, r):
            if is_strong_subset(notion, A, S):
                found.append(frozenset(A))
    return found


# ---------------------------------------------------------------- class samples

def _in_class(notion: str, S: Structure) -> bool:
    if notion == "scl":
        return isinstance(S, OrientedGraph) and in_D1(S)
    if notion == "le1":
        return isinstance(S, Graph) and in_C1(S)
    if notion == "le1_ordered":
        return isinstance(S, OrderedGraph) and not S.oriented and in_C1(S.graph)
    return True


@dataclass(frozen=True)
class ClassSample:
    """Finite fragment of a class of structures with a notion of strong substructure.

    ``members`` are pairwise non-isomorphic; the constructor checks that they
    belong to the class named by ``notion`` (for the strong notions) and that
    every strong substructure of a member is, up to isomorphism, a member.
    """

    members: tuple
    notion: str
    bound: int
    keys: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        if self.notion not in NOTIONS:
            raise ValueError(f"notion must be one of {NOTIONS}")
        keys = {}
        for S in self.members:
            if len(vertex_set(S)) > self.bound:
                raise ValueError(f"member {S!r} exceeds the size bound {self.bound}")
            if not _in_class(self.notion, S):
                raise ValueError(f"member {S!r} is not in the class for notion {self.notion!r}")
            k = canonical_form(S).key
            if k in keys:
                raise ValueError(f"members {keys[k]!r} and {S!r} are isomorphic")
            keys[k] = S
        object.__setattr__(self, "keys", frozenset(keys))
        for S in self.members:
            for A in strong_subsets(self.notion, S):
                if canonical_form(induced_substructure(S, A)).key not in self.keys:
                    raise ValueError(f"strong substructure {sorted(A)} of {S!r} is not a member")

    def contains(self, S: Structure) -> bool:
        return len(vertex_set(S)) <= self.bound and canonical_form(S).key in self.keys


def class_sample(notion: str, bound: int, predicate=None) -> ClassSample:
    """All isomorphism types of the class for ``notion`` on at most ``bound`` vertices.

    For ``"induced"`` the class is given by ``predicate`` (default: all graphs).
    """
    members = []
    seen = set()
    for n in range(bound + 1):
        if notion == "scl":
            candidates: Iterable = (D for D in all_oriented_graphs(n) if in_D1(D))
        elif notion == "le1":
            candidates = (G for G in all_graphs(n) if in_C1(G))
        elif notion == "le1_ordered":
            candidates = (OrderedGraph(G, range(n)) for G in all_graphs(n) if in_C1(G))
        elif notion == "induced":
            candidates = (G for G in all_graphs(n) if predicate is None or predicate(G))
        else:
            raise ValueError(f"notion must be one of {NOTIONS}")
        for S in candidates:
            k = canonical_form(S).key
            if k not in seen:
                seen.add(k)
                members.append(S)
    return ClassSample(tuple(members), notion, bound)


# ---------------------------------------------------------------- amalgamation

@dataclass
class AmalgamationReport:
    spans_checked: int = 0
    failures: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _shift_apart(B1: Structure, overlap: dict[int, int], avoid: set[int]) -> Structure:
    fresh = itertools.count(max(avoid, default=-1) + 1)
    mapping = {v: overlap[v] if v in overlap else next(fresh) for v in sorted(vertex_set(B1))}
    return relabel(B1, mapping)


def check_amalgamation(sample: ClassSample) -> AmalgamationReport:
    """Free-amalgamate every span ``B0 >= A <= B1`` of the sample and check the result."""
    if sample.bound > 5:
        raise ValueError("amalgamation checks are limited to samples of bound 5")
    if sample.notion not in ("le1", "scl"):
        raise ValueError("free amalgamation is checked for the graph and oriented classes")
    groups: dict[bytes, list[tuple[Structure, frozenset[int]]]] = {}
    for B in sample.members:
        for A in strong_subsets(sample.notion, B):
            key = canonical_form(induced_substructure(B, A)).key
            groups.setdefault(key, []).append((B, A))
    report = AmalgamationReport()
    for spans in groups.values():
        for (B0, A0), (B1, A1) in itertools.product(spans, repeat=2):
            sub0 = induced_substructure(B0, A0)
            sub1 = induced_substructure(B1, A1)
            for iso in iter_embeddings(sub1, sub0):
                report.spans_checked += 1
                moved = _shift_apart(B1, iso, set(vertex_set(B0)))
                M = free_amalgam(B0, moved, A0)
                problems = []
                if not _in_class(sample.notion, M):
                    problems.append("amalgam not in class")
                if not is_strong_subset(sample.notion, vertex_set(B0), M):
                    problems.append("first factor not strong")
                if not is_strong_subset(sample.notion, vertex_set(moved), M):
                    problems.append("second factor not strong")
                if problems:
                    report.failures.append((B0, B1, iso, problems))
    return report


# ----------------------------------------------------------- expansion property

def expansions(S: Structure, kind: str) -> list[Structure]:
    """Expansions of ``S`` of the given kind.

    ``order``: every linear order of a graph in C1.  ``orientation``: every
    acyclic 2-orientation of a graph.  ``admissible``: every order of an
    acyclic 2-oriented graph that passes the admissibility check.
    """
    if kind == "order":
        if not isinstance(S, Graph):
            raise TypeError("order expansions apply to graphs")
        return [OrderedGraph(S, p) for p in itertools.permutations(sorted(S.vertices))]
    if kind == "orientation":
        if not isinstance(S, Graph):
            raise TypeError("orientation expansions apply to graphs")
        return list(iter_acyclic_orientations(S, 2))
    if kind == "admissible":
        if not isinstance(S, OrientedGraph):
            raise TypeError("admissible-order expansions apply to oriented graphs")
        found = []
        for p in itertools.permutations(sorted(S.vertices)):
            X = OrderedGraph(S, p)
            if check_admissible(X).ok:
                found.append(X)
        return found
    raise ValueError(f"expansion kind must be one of {EXPANSION_KINDS}")


def _strong_image(kind: str, image: frozenset[int], Bplus: Structure) -> bool:
    if kind == "order":
        return is_le1(image, Bplus.graph)
    if kind == "orientation":
        return is_successor_closed(Bplus, image)
    return is_successor_closed(Bplus.graph, image)


def check_expansion_witness(A: Structure, B: Structure, kind: str = "order",
                            max_size: int = 7) -> bool:
    """Every expansion of ``A`` strongly embeds into every expansion of ``B``."""
    if kind not in EXPANSION_KINDS:
        raise ValueError(f"expansion kind must be one of {EXPANSION_KINDS}")
    if len(vertex_set(B)) > max_size:
        raise ValueError(f"B has more than {max_size} vertices")
    a_exp = expansions(A, kind)
    b_exp = expansions(B, kind)
    for Bp in b_exp:
        for Ap in a_exp:
            if not any(_strong_image(kind, frozenset(f.values()), Bp)
                       for f in iter_embeddings(Ap, Bp)):
                return False
    return True


# ------------------------------------------------------------------- WAP search

@dataclass
class WapResult:
    witness: Structure | None
    embedding: dict[int, int] | None
    exhausted: bool
    candidates_tried: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def _strong_extensions(sample: ClassSample, B: Structure, c_bound: int):
    """Proper one-step strong extensions ``(C, e: B -> C)`` within the size bound."""
    nb = len(vertex_set(B))
    for C in sample.members:
        if not nb < len(vertex_set(C)) <= c_bound:
            continue
        for e in iter_embeddings(B, C):
            if is_strong_subset(sample.notion, e.values(), C):
                yield C, e


def _amalgamate_over(sample: ClassSample, C0, f0: dict, C1, f1: dict, d_bound: int) -> bool:
    """Some member ``D`` takes strong embeddings of both that agree on ``A``."""
    for D in sample.members:
        if len(vertex_set(D)) > d_bound:
            continue
        first = [g for g in iter_embeddings(C0, D)
                 if is_strong_subset(sample.notion, g.values(), D)]
        if not first:
            continue
        for g1 in iter_embeddings(C1, D):
            if not is_strong_subset(sample.notion, g1.values(), D):
                continue
            on_a = {a: g1[f1[a]] for a in f1}
            if any(all(g0[f0[a]] == on_a[a] for a in f0) for g0 in first):
                return True
    return False


def search_wap_witness(A: Structure, sample: ClassSample, b_bound: int = 6,
                       c_bound: int = 7) -> WapResult:
    """Bounded search for a weak-amalgamation witness ``B`` over ``A``.

    ``B`` ranges over sample members with a strong copy of ``A``; it is a
    witness when any two proper strong extensions of ``B`` of size at most
    ``c_bound`` amalgamate inside the sample by maps that agree on ``A``.
    Exhaustion only means no witness exists within these bounds.
    """
    if b_bound > 6 or c_bound > 7:
        raise ValueError("search bounds are limited to |B| <= 6 and |C| <= 7")
    tried = 0
    for B in sample.members:
        if len(vertex_set(B)) > b_bound:
            continue
        for a_in_b in iter_embeddings(A, B):
            if not is_strong_subset(sample.notion, a_in_b.values(), B):
                continue
            tried += 1
            exts = list(_strong_extensions(sample, B, c_bound))
            ok = True
            for (C0, e0), (C1, e1) in itertools.combinations_with_replacement(exts, 2):
                f0 = {a: e0[b] for a, b in a_in_b.items()}
                f1 = {a: e1[b] for a, b in a_in_b.items()}
                if not _amalgamate_over(sample, C0, f0, C1, f1, sample.bound):
                    ok = False
                    break
            if ok:
                return WapResult(B, a_in_b, False, tried)
    return WapResult(None, None, True, tried)

