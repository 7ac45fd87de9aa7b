"""Canonical forms for small graphs, oriented graphs and ordered structures.

Ordered structures are rigid, so their key is just the encoding under the
labelling by rank.  Unordered structures are canonised by an
individualisation-refinement search: colour refinement after each placement,
branching only over the smallest colour class, skipping interchangeable twins
and pruning any branch whose encoding prefix is already worse than the best.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping

from .structures import Graph, OrderedGraph, OrientedGraph, Structure

DEFAULT_MAX_SIZE = 12


class CanonSizeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: bytes

    def __str__(self) -> str:
        return self.key.hex()


def _adjacency(S: Graph | OrientedGraph):
    if isinstance(S, Graph):
        return S.adj, S.adj, False
    return S.succ, S.pred, True


def _color_ranks(vs, colors: Mapping[int, Hashable] | None):
    if not colors:
        return {v: 0 for v in vs}, []
    values = sorted({colors.get(v, ()) for v in vs}, key=repr)
    index = {repr(c): i for i, c in enumerate(values)}
    return {v: index[repr(colors.get(v, ()))] for v in vs}, values


def _ordered_key(S: OrderedGraph, colors) -> CanonicalForm:
    rank = S.rank
    crank, cvals = _color_ranks(S.vertices, colors)
    g = S.graph
    if isinstance(g, Graph):
        rel = sorted(tuple(sorted((rank[u], rank[v]))) for u, v in g.edges)
        tag = "og"
    else:
        rel = sorted((rank[u], rank[v]) for u, v in g.arcs)
        tag = "od"
    data = (tag, len(S.order), [repr(c) for c in cvals], [crank[v] for v in S.order], rel)
    return CanonicalForm(repr(data).encode())


def _refine(vs, init, succ, pred, directed):
    """Colour refinement; colour names are ranks of signatures, so label-free."""
    col = dict(init)
    ncls = len(set(col.values()))
    while True:
        if directed:
            sig = {v: (col[v], tuple(sorted(col[u] for u in succ[v])),
                       tuple(sorted(col[u] for u in pred[v]))) for v in vs}
        else:
            sig = {v: (col[v], tuple(sorted(col[u] for u in succ[v]))) for v in vs}
        names = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        col = {v: names[sig[v]] for v in vs}
        if len(names) == ncls:
            return col
        ncls = len(names)


def _twin_classes(vs, base, succ, pred, directed):
    cls = {}
    for v in vs:
        if directed:
            key = (base[v], succ[v], pred[v])
        else:
            key = (base[v], succ[v])
        cls[v] = key
    if not directed:
        # adjacent twins share closed neighbourhoods
        closed = {v: (base[v], succ[v] | {v}) for v in vs}
        groups: dict = {}
        for v in vs:
            groups.setdefault(closed[v], []).append(v)
        for members in groups.values():
            if len(members) > 1:
                for v in members:
                    cls[v] = ("closed",) + closed[members[0]]
    return cls


def _unordered_key(S: Graph | OrientedGraph, colors) -> CanonicalForm:
    vs = sorted(S.vertices)
    n = len(vs)
    succ, pred, directed = _adjacency(S)
    crank, cvals = _color_ranks(vs, colors)
    twins = _twin_classes(vs, crank, succ, pred, directed)
    best: list = [None]

    def search(placed: list[int], rows: list[tuple]):
        depth = len(placed)
        if depth == n:
            if best[0] is None or rows < best[0]:
                best[0] = list(rows)
            return
        pos = {v: i for i, v in enumerate(placed)}
        init = {v: (crank[v], pos.get(v, -1)) for v in vs}
        col = _refine(vs, init, succ, pred, directed)
        free = [v for v in vs if v not in pos]
        low = min(col[v] for v in free)
        seen = set()
        for v in free:
            if col[v] != low or twins[v] in seen:
                continue
            seen.add(twins[v])
            out_mask = sum(1 << pos[u] for u in succ[v] if u in pos)
            in_mask = sum(1 << pos[u] for u in pred[v] if u in pos) if directed else 0
            row = (low, crank[v], out_mask, in_mask)
            rows.append(row)
            if best[0] is None or rows <= best[0][:depth + 1]:
                placed.append(v)
                search(placed, rows)
                placed.pop()
            rows.pop()

    search([], [])
    tag = "ud" if directed else "ug"
    data = (tag, n, [repr(c) for c in cvals], best[0] or [])
    return CanonicalForm(repr(data).encode())


def canonical_form(S: Structure, colors: Mapping[int, Hashable] | None = None,
                   max_size: int = DEFAULT_MAX_SIZE) -> CanonicalForm:
    """Isomorphism-invariant key of ``S``.

    ``colors`` optionally assigns each vertex a colour that isomorphisms must
    preserve; giving base vertices their own id as colour pins them pointwise.
    Ordered structures of any size are accepted; unordered ones are limited to
    ``max_size`` vertices.
    """
    if isinstance(S, OrderedGraph):
        return _ordered_key(S, colors)
    if not isinstance(S, (Graph, OrientedGraph)):
        raise TypeError(f"not a structure: {type(S).__name__}")
    if len(S.vertices) > max_size:
        raise CanonSizeError(f"structure has {len(S.vertices)} vertices; canonical "
                             f"forms are limited to {max_size}")
    return _unordered_key(S, colors)


def isomorphic(X: Structure, Y: Structure, max_size: int = DEFAULT_MAX_SIZE) -> bool:
    return canonical_form(X, max_size=max_size) == canonical_form(Y, max_size=max_size)
