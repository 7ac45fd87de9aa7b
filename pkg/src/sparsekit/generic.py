"""Finite approximations of the generic structures, by repeated free amalgamation.

Every round takes the structure as it stood at the start of the round, lists
all extension tasks ``(X, Y)`` with ``X`` strong in it, ``|X| <= t - 1``,
``|Y| <= t`` and ``X`` strong in ``Y``, and realizes each one by freely
amalgamating a fresh copy of ``Y`` over ``X``.  New vertices always get ids
above every existing id, so the structure after any logged step is the
induced substructure on the ids below that step's vertex count.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .admissible import extend_admissible_order
from .canon import canonical_form
from .closure import is_le1, is_successor_closed
from .orientation import in_C1, in_D1
from .structures import (
    Graph,
    OrderedGraph,
    OrientedGraph,
    free_amalgam,
    induced_substructure,
    relabel,
)

MODES = ("graph_C1", "oriented_D1", "ordered_O1")


@dataclass(frozen=True)
class GenericConfig:
    size_budget: int = 2000
    task_bound: int = 3
    rounds: int = 2
    seed: int = 0
    mode: str = "graph_C1"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.size_budget < 1 or self.task_bound < 1 or self.rounds < 0:
            raise ValueError("size budget and task bound must be positive, rounds non-negative")


@dataclass(frozen=True)
class LogEntry:
    round: int
    base: tuple[int, ...]
    extension: Graph | OrientedGraph
    new_vertices: dict[int, int]
    size_after: int


@dataclass
class GenericStructure:
    structure: Graph | OrientedGraph | OrderedGraph
    config: GenericConfig
    log: list[LogEntry] = field(default_factory=list)
    complete: bool = True
    settled: frozenset[int] = frozenset()

    @property
    def digraph_or_graph(self) -> Graph | OrientedGraph:
        S = self.structure
        return S.graph if isinstance(S, OrderedGraph) else S

    def after_step(self, i: int):
        """The structure right after log entry ``i``."""
        return induced_substructure(self.structure, range(self.log[i].size_after))


@dataclass
class ExtensionReport:
    total: int
    realized: int
    missing: list[tuple[tuple[int, ...], tuple[int, ...]]]

    @property
    def fraction(self) -> float:
        return self.realized / self.total if self.total else 1.0


def _empty(mode: str):
    return Graph() if mode == "graph_C1" else OrientedGraph()


def _in_class(mode: str, S) -> bool:
    return in_C1(S) if mode == "graph_C1" else in_D1(S)


def _strong(mode: str, X, S) -> bool:
    return is_le1(X, S) if mode == "graph_C1" else is_successor_closed(S, X)


def extension_catalog(mode: str, X, t: int) -> list:
    """Extensions ``Y`` of ``X`` with ``X`` strong in ``Y`` and ``|Y| <= t``.

    New vertices get ids just above those of ``X``.  Results are pairwise
    non-isomorphic over ``X`` (which is pinned pointwise).
    """
    base = sorted(X.vertices)
    start = max(base, default=-1) + 1
    pins = {v: ("base", v) for v in base}
    found: dict[bytes, object] = {}
    for extra in range(1, t - len(base) + 1):
        new = list(range(start, start + extra))
        pairs = [(u, v) for u in new for v in base] + list(itertools.combinations(new, 2))
        states = (0, 1) if mode == "graph_C1" else (0, 1, 2)
        for choice in itertools.product(states, repeat=len(pairs)):
            if mode == "graph_C1":
                Y = Graph(X.vertices | set(new),
                          set(X.edges) | {p for p, s in zip(pairs, choice) if s})
            else:
                arcs = [(u, v) if s == 1 else (v, u) for (u, v), s in zip(pairs, choice) if s]
                Y = OrientedGraph(X.vertices | set(new), set(X.arcs) | set(arcs))
            if not _in_class(mode, Y) or not _strong(mode, X.vertices, Y):
                continue
            key = canonical_form(Y, pins, max_size=t).key
            found.setdefault(key, Y)
    return [found[k] for k in sorted(found)]


def _catalog_for(mode: str, X, t: int, cache: dict):
    """Catalog for ``X`` computed once per isomorphism type of its normalized copy."""
    base = sorted(X.vertices)
    to_norm = {v: i for i, v in enumerate(base)}
    normalized = relabel(X, to_norm)
    key = (normalized, t)
    if key not in cache:
        cache[key] = extension_catalog(mode, normalized, t)
    return base, cache[key]


def _tasks(mode: str, S, t: int, cache: dict) -> list[tuple[tuple[int, ...], object]]:
    tasks = []
    vs = sorted(S.vertices)
    for r in range(min(t - 1, len(vs)) + 1):
        for X in itertools.combinations(vs, r):
            if not _strong(mode, X, S):
                continue
            base, catalog = _catalog_for(mode, induced_substructure(S, X), t, cache)
            for Y in catalog:
                tasks.append((tuple(base), Y))
    return tasks


def _realize(S, base: tuple[int, ...], Y, fresh: int):
    """Free amalgam of ``S`` with a copy of ``Y`` glued onto ``base``."""
    mapping = {i: v for i, v in enumerate(base)}
    new_ids = {}
    for v in sorted(Y.vertices):
        if v not in mapping:
            mapping[v] = fresh
            new_ids[v] = fresh
            fresh += 1
    return free_amalgam(S, relabel(Y, mapping), base), new_ids


def generic_build(cfg: GenericConfig) -> GenericStructure:
    rng = random.Random(cfg.seed)
    plain = _empty("oriented_D1" if cfg.mode == "ordered_O1" else cfg.mode)
    kind = "graph_C1" if cfg.mode == "graph_C1" else "oriented_D1"
    cache: dict = {}
    result = GenericStructure(plain, cfg)
    settled = frozenset()
    for rnd in range(cfg.rounds):
        start_vertices = plain.vertices
        tasks = _tasks(kind, plain, cfg.task_bound, cache)
        need = sum(len(Y.vertices) - len(b) for b, Y in tasks)
        if len(plain.vertices) + need > cfg.size_budget:
            rng.shuffle(tasks)
            result.complete = False
        for base, Y in tasks:
            if len(plain.vertices) + len(Y.vertices) - len(base) > cfg.size_budget:
                continue
            fresh = max(plain.vertices, default=-1) + 1
            plain, new_ids = _realize(plain, base, Y, fresh)
            result.log.append(LogEntry(rnd, base, Y, new_ids, len(plain.vertices)))
        if not result.complete:
            break
        settled = start_vertices
    # the order is laid down once at the end; every logged prefix is
    # successor-closed, so its restriction of the order is admissible too
    result.structure = extend_admissible_order(plain, []) if cfg.mode == "ordered_O1" else plain
    result.settled = frozenset(settled)
    return result


def _one_point_types(X: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [N for r in range(min(2, len(X)) + 1) for N in itertools.combinations(X, r)]


def verify_extension_property(G: GenericStructure, t: int,
                              within=None) -> ExtensionReport:
    """How many one-point extension tasks over small strong sets are realized.

    Tasks are pairs ``(X, N)`` with ``X`` strong, ``X`` inside ``within``
    (default: the vertices settled before the last completed round) and
    ``|X| <= t - 1``, and ``N`` a subset of ``X`` of size at most 2.  A task is
    realized by a vertex ``s`` outside ``X`` with neighbourhood ``N`` in ``X``
    (for graphs, with ``X + s`` strong) or with out-neighbourhood exactly ``N``
    (for oriented graphs).
    """
    if t > G.config.task_bound:
        raise ValueError("t exceeds the task bound used to build the structure")
    plain = G.digraph_or_graph
    mode = "graph_C1" if isinstance(plain, Graph) else "oriented_D1"
    pool = sorted(G.settled if within is None else within)
    total = realized = 0
    missing = []
    for r in range(min(t - 1, len(pool)) + 1):
        for X in itertools.combinations(pool, r):
            if not _strong(mode, X, plain):
                continue
            xs = set(X)
            for N in _one_point_types(X):
                total += 1
                if _realized(mode, plain, xs, set(N)):
                    realized += 1
                else:
                    missing.append((X, N))
    return ExtensionReport(total, realized, missing)


def _realized(mode: str, S, X: set[int], N: set[int]) -> bool:
    for s in sorted(S.vertices - X):
        if mode == "oriented_D1":
            if S.succ[s] == N:
                return True
        elif S.adj[s] & X == N and is_le1(X | {s}, S):
            return True
    return False
