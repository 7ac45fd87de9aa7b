"""Line-oriented text format for single structures, and DOT export.

Grammar (one directive per line, ``#`` starts a comment line)::

    format 1
    kind graph | oriented | ordered | ordered_oriented
    vertices <id> <id> ...
    edge <u> <v>          graph and ordered kinds
    arc <u> <v>           oriented and ordered_oriented kinds
    order <id> <id> ...   ordered kinds only, lists every vertex once
    meta <key> <value...> free-form; the value is the rest of the line

``format``, ``kind`` and ``vertices`` must each appear exactly once, in that
order, before any other directive.  Serialization writes vertices and edges in
sorted order and metadata sorted by key, so equal structures give identical
text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .structures import Graph, OrderedGraph, OrientedGraph, Structure, edge_key

FORMAT_VERSION = 1
KINDS = ("graph", "oriented", "ordered", "ordered_oriented")


class DocumentError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class StructureDocument:
    structure: Structure
    metadata: dict[str, str] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @property
    def kind(self) -> str:
        return kind_of(self.structure)


def kind_of(S: Structure) -> str:
    if isinstance(S, OrderedGraph):
        return "ordered_oriented" if S.oriented else "ordered"
    if isinstance(S, OrientedGraph):
        return "oriented"
    if isinstance(S, Graph):
        return "graph"
    raise TypeError(f"not a structure: {type(S).__name__}")


def _tokens(text: str):
    """(token, column) pairs of one line; columns are 1-based."""
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def _int(tok: str, col: int, lineno: int) -> int:
    if not tok.isdigit():
        raise DocumentError(f"expected a non-negative integer vertex id, got {tok!r}", lineno, col)
    return int(tok)


def parse(text: str) -> StructureDocument:
    version = kind = None
    vertices: list[int] | None = None
    vertex_set: set[int] = set()
    seen_pairs: dict[tuple[int, int], int] = {}
    links: list[tuple[int, int]] = []
    order = None
    order_pos = (0, 0)
    meta: dict[str, str] = {}
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks or toks[0][0].startswith("#"):
            continue
        word, col = toks[0]
        args = toks[1:]
        if word == "format":
            if version is not None:
                raise DocumentError("repeated format line", lineno, col)
            if len(args) != 1 or not args[0][0].isdigit():
                raise DocumentError("format takes one integer", lineno, col)
            version = int(args[0][0])
            if version != FORMAT_VERSION:
                raise DocumentError(f"unsupported format version {version}", lineno, args[0][1])
            continue
        if version is None:
            raise DocumentError("document must start with a format line", lineno, col)
        if word == "kind":
            if kind is not None:
                raise DocumentError("repeated kind line", lineno, col)
            if len(args) != 1 or args[0][0] not in KINDS:
                raise DocumentError(f"kind must be one of {', '.join(KINDS)}", lineno, col)
            kind = args[0][0]
            continue
        if kind is None:
            raise DocumentError("kind line must precede the structure", lineno, col)
        if word == "vertices":
            if vertices is not None:
                raise DocumentError("repeated vertices line", lineno, col)
            vertices = []
            for tok, c in args:
                v = _int(tok, c, lineno)
                if v in vertex_set:
                    raise DocumentError(f"vertex {v} listed twice", lineno, c)
                vertex_set.add(v)
                vertices.append(v)
            continue
        if vertices is None:
            raise DocumentError("vertices line must precede other directives", lineno, col)
        if word in ("edge", "arc"):
            oriented = kind in ("oriented", "ordered_oriented")
            if (word == "arc") != oriented:
                raise DocumentError(f"{word} lines are not allowed in {kind} documents", lineno, col)
            if len(args) != 2:
                raise DocumentError(f"{word} takes two vertex ids", lineno, col)
            u, v = (_int(t, c, lineno) for t, c in args)
            for x, (_, c) in zip((u, v), args):
                if x not in vertex_set:
                    raise DocumentError(f"unknown vertex {x}", lineno, c)
            if u == v:
                raise DocumentError(f"loop at vertex {u}", lineno, args[1][1])
            key = edge_key(u, v)
            if key in seen_pairs:
                raise DocumentError(f"duplicate {word} between {u} and {v} "
                                    f"(first given on line {seen_pairs[key]})", lineno, col)
            seen_pairs[key] = lineno
            links.append((u, v))
            continue
        if word == "order":
            if kind not in ("ordered", "ordered_oriented"):
                raise DocumentError(f"order lines are not allowed in {kind} documents", lineno, col)
            if order is not None:
                raise DocumentError("repeated order line", lineno, col)
            order = [_int(t, c, lineno) for t, c in args]
            order_pos = (lineno, col)
            continue
        if word == "meta":
            if not args:
                raise DocumentError("meta needs a key", lineno, col)
            key, kcol = args[0]
            if key in meta:
                raise DocumentError(f"repeated meta key {key!r}", lineno, kcol)
            value_start = args[1][1] - 1 if len(args) > 1 else len(raw)
            meta[key] = raw[value_start:].rstrip()
            continue
        raise DocumentError(f"unknown directive {word!r}", lineno, col)
    if version is None:
        raise DocumentError("missing format line", lineno + 1, 1)
    if kind is None:
        raise DocumentError("missing kind line", lineno + 1, 1)
    if vertices is None:
        raise DocumentError("missing vertices line", lineno + 1, 1)
    if kind == "graph":
        S: Structure = Graph(vertices, links)
    elif kind == "oriented":
        S = OrientedGraph(vertices, links)
    else:
        if order is None:
            raise DocumentError(f"{kind} documents need an order line", lineno + 1, 1)
        if sorted(order) != sorted(vertices):
            missing = sorted(vertex_set - set(order))
            unknown = sorted(set(order) - vertex_set)
            repeated = sorted({v for v in order if order.count(v) > 1})
            raise DocumentError(f"order is not a permutation of the vertices (missing {missing}, "
                                f"unknown {unknown}, repeated {repeated})", *order_pos)
        g = OrientedGraph(vertices, links) if kind == "ordered_oriented" else Graph(vertices, links)
        S = OrderedGraph(g, order)
    return StructureDocument(S, meta, version)


def serialize(doc: StructureDocument | Structure, metadata: dict[str, str] | None = None) -> str:
    if not isinstance(doc, StructureDocument):
        doc = StructureDocument(doc, dict(metadata or {}))
    S = doc.structure
    kind = kind_of(S)
    g = S.graph if isinstance(S, OrderedGraph) else S
    lines = [f"format {doc.format_version}", f"kind {kind}",
             " ".join(["vertices"] + [str(v) for v in sorted(g.vertices)])]
    if isinstance(g, OrientedGraph):
        lines += [f"arc {u} {v}" for u, v in sorted(g.arcs)]
    else:
        lines += [f"edge {u} {v}" for u, v in sorted(g.edges)]
    if isinstance(S, OrderedGraph):
        lines.append(" ".join(["order"] + [str(v) for v in S.order]))
    for key in sorted(doc.metadata):
        value = doc.metadata[key]
        lines.append(f"meta {key} {value}" if value else f"meta {key}")
    return "\n".join(lines) + "\n"


def export_dot(S: Structure) -> str:
    g = S.graph if isinstance(S, OrderedGraph) else S
    directed = isinstance(g, OrientedGraph)
    lines = ["digraph G {" if directed else "graph G {"]
    if g.vertices:
        rank = S.rank if isinstance(S, OrderedGraph) else None
        for v in sorted(g.vertices):
            lines.append(f'  {v} [label="{rank[v]}:{v}"];' if rank is not None else f"  {v};")
        if directed:
            lines += [f"  {u} -> {v};" for u, v in sorted(g.arcs)]
        else:
            lines += [f"  {u} -- {v};" for u, v in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
