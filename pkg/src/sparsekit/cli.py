"""Command-line entry point: one subcommand per library operation.

Structures are read from file arguments or standard input in the document
format of :mod:`sparsekit.docformat`.  Exit status is 0 for success or a
``true`` decision, 1 for a ``false`` decision, and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from typing import Callable

from . import admissible, canon, closure, gadgets, generic, hierarchy, lab, orientation
from .docformat import DocumentError, StructureDocument, export_dot, parse, serialize
from .structures import (
    Graph,
    OrderedGraph,
    OrientedGraph,
    StructureError,
    free_amalgam,
    induced_substructure,
    underlying_graph,
)

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def _read(path: str | None) -> StructureDocument:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse(text)


def _ids(text: str | None) -> list[int]:
    if text is None:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected vertex ids, got {text!r}") from None


def _want(doc: StructureDocument, *types):
    if not isinstance(doc.structure, types):
        names = " or ".join(t.__name__ for t in types)
        raise UsageError(f"this command needs a {names}, got a {doc.kind} document")
    return doc.structure


def _graph(doc: StructureDocument) -> Graph:
    return underlying_graph(doc.structure)


def _digraph(doc: StructureDocument) -> OrientedGraph:
    S = doc.structure
    if isinstance(S, OrderedGraph) and S.oriented:
        return S.graph
    return _want(doc, OrientedGraph)


def _verdict(ok: bool) -> int:
    print("true" if ok else "false")
    return EXIT_TRUE if ok else EXIT_FALSE


def _emit(args, S, meta: dict[str, str] | None = None) -> int:
    if args.format == "dot":
        sys.stdout.write(export_dot(S))
    elif args.format == "verdict":
        print("true")
    else:
        sys.stdout.write(serialize(StructureDocument(S, dict(meta or {}))))
    return EXIT_TRUE


def _set_line(vs) -> str:
    return " ".join(str(v) for v in sorted(vs))


def _arcs_text(D: OrientedGraph) -> str:
    return " ".join(f"{u}>{v}" for u, v in sorted(D.arcs))


def _parse_arcs(text: str) -> list[tuple[int, int]]:
    arcs = []
    for tok in text.split():
        u, _, v = tok.partition(">")
        arcs.append((int(u), int(v)))
    return arcs


# ---------------------------------------------------------------- commands

def cmd_induced(args):
    doc = _read(args.input)
    return _emit(args, induced_substructure(doc.structure, _ids(args.vertices)))


def cmd_canon(args):
    doc = _read(args.input)
    key = canon.canonical_form(doc.structure).key
    print(hashlib.sha256(key).hexdigest())
    return EXIT_TRUE


def cmd_iso(args):
    return _verdict(canon.isomorphic(_read(args.first).structure, _read(args.second).structure))


def cmd_amalgam(args):
    left, right = _read(args.first).structure, _read(args.second).structure
    if type(left) is not type(right) or isinstance(left, OrderedGraph):
        raise UsageError("amalgam needs two graph documents or two oriented documents")
    return _emit(args, free_amalgam(left, right))


def cmd_check_sparse(args):
    return _verdict(orientation.is_k_sparse(_graph(_read(args.input)), args.k))


def _orient(args, finder):
    G = _graph(_read(args.input))
    try:
        D = finder(G, args.k)
    except orientation.OrientationFailure as exc:
        print(f"false witness {_set_line(exc.witness)}")
        return EXIT_FALSE
    return _emit(args, D)


def cmd_orient(args):
    return _orient(args, orientation.find_orientation)


def cmd_orient_acyclic(args):
    return _orient(args, orientation.find_acyclic_orientation)


def cmd_classify(args):
    S = _read(args.input).structure
    if isinstance(S, OrderedGraph):
        S = S.graph
    labels = sorted(orientation.class_membership(S))
    print(" ".join(labels) if labels else "none")
    return EXIT_TRUE


def cmd_scl(args):
    print(_set_line(closure.scl(_digraph(_read(args.input)), _ids(args.vertices))))
    return EXIT_TRUE


def cmd_check_closed(args):
    return _verdict(closure.is_successor_closed(_digraph(_read(args.input)), _ids(args.vertices)))


def cmd_check_le1(args):
    return _verdict(closure.is_le1(_ids(args.vertices), _graph(_read(args.input))))


def cmd_order_from_orientation(args):
    D = _digraph(_read(args.input))
    return _emit(args, closure.order_from_orientation(D))


def cmd_orientation_from_order(args):
    A = _want(_read(args.input), OrderedGraph)
    D = closure.orientation_from_order(A)
    if D is None:
        return _verdict(False)
    return _emit(args, D)


def cmd_levels(args):
    lv = hierarchy.levels(_digraph(_read(args.input)))
    for v in sorted(lv):
        print(f"{v} {lv[v]}")
    return EXIT_TRUE


def cmd_cones(args):
    for c in hierarchy.cones(_digraph(_read(args.input))):
        print(_set_line(c))
    return EXIT_TRUE


def cmd_closure_ext(args):
    D = _digraph(_read(args.input))
    res = hierarchy.closure_extension_of(D, args.vertex)
    return _emit(args, induced_substructure(D, res.closed_set),
                 {"head": str(res.head), "base": _set_line(res.base)})


def cmd_tri_compare(args):
    X = _want(_read(args.first), OrderedGraph)
    Y = _want(_read(args.second), OrderedGraph)
    print(admissible.tri_compare(X, Y))
    return EXIT_TRUE


def cmd_adm_order(args):
    return _emit(args, admissible.build_admissible_order(_digraph(_read(args.input))))


def cmd_check_adm(args):
    A = _want(_read(args.input), OrderedGraph)
    report = admissible.check_admissible(A)
    for u, v, why in report.violations:
        print(f"violation {u} {v}: {why}", file=sys.stderr)
    return _verdict(report.ok)


def cmd_check_extension(args):
    B = _digraph(_read(args.input))
    parts = [_ids(p) for p in args.part]
    return _verdict(admissible.check_extension_condition(parts, _ids(args.order), B))


def cmd_build_tree(args):
    T = gadgets.build_tree(args.kind, args.q)
    return _emit(args, T.digraph, {"head": str(T.head), "tree.kind": T.kind, "tree.q": str(T.q)})


def cmd_pad(args):
    return _emit(args, gadgets.pad_outdegrees(_digraph(_read(args.input))))


def _complex_meta(X: gadgets.AttachedComplex, C: OrientedGraph) -> dict[str, str]:
    return {"base.vertices": _set_line(C.vertices), "base.arcs": _arcs_text(C),
            "tree.kind": X.tree.kind, "tree.q": str(X.tree.q),
            "tree.region": _set_line(X.tree_region)}


def cmd_attach(args):
    C = _digraph(_read(args.input))
    X = gadgets.attach_trees(C, args.kind, args.q)
    return _emit(args, X.digraph, _complex_meta(X, C))


def cmd_reorient(args):
    C = _digraph(_read(args.input))
    X = gadgets.attach_trees(C, args.kind, args.q)
    return _emit(args, gadgets.reorient_toward_head(X), _complex_meta(X, C))


def cmd_build_witness(args):
    C = _digraph(_read(args.input))
    X = gadgets.attach_trees(C, args.kind, args.q)
    W = gadgets.build_witness_shape(X)
    meta = _complex_meta(X, C)
    for v, ws in W.witness_map.items():
        meta[f"witness.{v}"] = " ".join(str(w) for w in ws)
    return _emit(args, W.ordered_graph, meta)


def cmd_check_witness(args):
    doc = _read(args.input)
    A = _want(doc, OrderedGraph)
    meta = doc.metadata
    try:
        C = OrientedGraph(_ids(meta["base.vertices"]), _parse_arcs(meta["base.arcs"]))
        X = gadgets.attach_trees(C, meta["tree.kind"], int(meta["tree.q"]))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"witness document metadata is incomplete or invalid: {exc}") from None
    witness_map = {int(k.split(".", 1)[1]): tuple(_ids(v))
                   for k, v in meta.items() if k.startswith("witness.")}
    report = gadgets.check_witness(gadgets.WitnessOrderedGraph(A, X, witness_map))
    for problem in report.violations:
        print(problem, file=sys.stderr)
    return _verdict(report.ok)


def cmd_reachable(args):
    print(_set_line(gadgets.reachable_set(_digraph(_read(args.input)), args.vertex, args.n)))
    return EXIT_TRUE


def cmd_incompat(args):
    return _verdict(gadgets.incompatibility_check(args.q))


def cmd_generic(args):
    cfg = generic.GenericConfig(size_budget=args.budget, task_bound=args.t,
                                rounds=args.rounds, seed=args.seed, mode=args.mode)
    G = generic.generic_build(cfg)
    meta = {"mode": cfg.mode, "rounds": str(cfg.rounds), "task_bound": str(cfg.task_bound),
            "seed": str(cfg.seed), "budget": str(cfg.size_budget),
            "complete": "true" if G.complete else "false", "settled": _set_line(G.settled),
            "steps": str(len(G.log))}
    return _emit(args, G.structure, meta)


def cmd_verify_extension(args):
    doc = _read(args.input)
    meta = doc.metadata
    try:
        cfg = generic.GenericConfig(size_budget=int(meta.get("budget", "1")),
                                    task_bound=int(meta["task_bound"]),
                                    rounds=int(meta.get("rounds", "0")),
                                    seed=int(meta.get("seed", "0")), mode=meta["mode"])
    except (KeyError, ValueError) as exc:
        raise UsageError(f"document is not generic-builder output: {exc}") from None
    G = generic.GenericStructure(doc.structure, cfg, settled=frozenset(_ids(meta.get("settled"))))
    report = generic.verify_extension_property(G, args.t)
    print(f"{report.realized}/{report.total} {report.fraction:.6f}")
    return EXIT_TRUE if report.realized == report.total else EXIT_FALSE


def cmd_lab_enumerate(args):
    G = _graph(_read(args.input))
    found = lab.enumerate_acyclic_orientations(G, args.k)
    print(f"count {len(found)}")
    for D in found:
        print(_arcs_text(D))
    return EXIT_TRUE if found else EXIT_FALSE


def cmd_lab_amalgamation(args):
    report = lab.check_amalgamation(lab.class_sample(args.notion, args.bound))
    print(f"spans {report.spans_checked} failures {len(report.failures)}")
    return EXIT_TRUE if report.ok else EXIT_FALSE


def cmd_lab_expansion(args):
    A, B = _read(args.first).structure, _read(args.second).structure
    return _verdict(lab.check_expansion_witness(A, B, args.kind))


def cmd_lab_wap(args):
    A = _read(args.input).structure
    sample = lab.class_sample(args.notion, args.bound)
    result = lab.search_wap_witness(A, sample, args.b_bound, args.c_bound)
    if not result.found:
        print(f"exhausted after {result.candidates_tried} candidates")
        return EXIT_FALSE
    return _emit(args, result.witness,
                 {"embedding": " ".join(f"{a}>{b}" for a, b in sorted(result.embedding.items()))})


def cmd_normalize(args):
    doc = _read(args.input)
    sys.stdout.write(serialize(doc))
    return EXIT_TRUE


def cmd_export_dot(args):
    sys.stdout.write(export_dot(_read(args.input).structure))
    return EXIT_TRUE


# ----------------------------------------------------------------- wiring

# subcommand -> library operation it exposes
OPERATIONS: dict[str, Callable] = {
    "induced": induced_substructure,
    "canon": canon.canonical_form,
    "iso": canon.isomorphic,
    "amalgam": free_amalgam,
    "check-sparse": orientation.is_k_sparse,
    "orient": orientation.find_orientation,
    "orient-acyclic": orientation.find_acyclic_orientation,
    "classify": orientation.class_membership,
    "scl": closure.scl,
    "check-closed": closure.is_successor_closed,
    "check-le1": closure.is_le1,
    "order-from-orientation": closure.order_from_orientation,
    "orientation-from-order": closure.orientation_from_order,
    "levels": hierarchy.levels,
    "cones": hierarchy.cones,
    "closure-ext": hierarchy.closure_extension_of,
    "tri-compare": admissible.tri_compare,
    "adm-order": admissible.build_admissible_order,
    "check-adm": admissible.check_admissible,
    "check-extension": admissible.check_extension_condition,
    "build-tree": gadgets.build_tree,
    "pad": gadgets.pad_outdegrees,
    "attach": gadgets.attach_trees,
    "reorient": gadgets.reorient_toward_head,
    "build-witness": gadgets.build_witness_shape,
    "check-witness": gadgets.check_witness,
    "reachable": gadgets.reachable_set,
    "incompat": gadgets.incompatibility_check,
    "generic": generic.generic_build,
    "verify-extension": generic.verify_extension_property,
    "lab-enumerate": lab.enumerate_acyclic_orientations,
    "lab-amalgamation": lab.check_amalgamation,
    "lab-expansion": lab.check_expansion_witness,
    "lab-wap": lab.search_wap_witness,
    "normalize": serialize,
    "export-dot": export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    formats = ("doc", "dot", "verdict")
    parser = argparse.ArgumentParser(
        prog="sparsekit",
        description="Sparse graphs, orientations, admissible orders and tree gadgets.")
    parser.add_argument("--format", choices=formats, default="doc",
                        help="how structure results are printed (default: doc)")
    # accepted after the subcommand too, without clobbering an earlier choice
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=formats, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text, inputs=("input",)):
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        for i in inputs:
            if i == "input":
                p.add_argument("input", nargs="?", help="structure document (default: stdin)")
            else:
                p.add_argument(i, help="structure document")
        p.set_defaults(func=func)
        return p

    add("induced", cmd_induced, "induced substructure on --vertices").add_argument(
        "--vertices", required=True)
    add("canon", cmd_canon, "hash of the canonical form (equal iff isomorphic)")
    add("iso", cmd_iso, "decide isomorphism of two structures", ("first", "second"))
    add("amalgam", cmd_amalgam, "free amalgam over the shared vertex ids", ("first", "second"))
    for name, func, text in (("check-sparse", cmd_check_sparse, "decide k-sparsity"),
                             ("orient", cmd_orient, "orientation with out-degree <= k"),
                             ("orient-acyclic", cmd_orient_acyclic,
                              "acyclic orientation with out-degree <= k")):
        add(name, func, text).add_argument("-k", type=int, default=2)
    add("classify", cmd_classify, "which of C0, C1, D0, D1 contain the structure")
    add("scl", cmd_scl, "successor-closure of --vertices").add_argument("--vertices", default="")
    add("check-closed", cmd_check_closed, "is --vertices successor-closed").add_argument(
        "--vertices", default="")
    add("check-le1", cmd_check_le1, "is --vertices 1-strong in the graph").add_argument(
        "--vertices", default="")
    add("order-from-orientation", cmd_order_from_orientation,
        "linear order inducing the acyclic 2-orientation")
    add("orientation-from-order", cmd_orientation_from_order,
        "orient edges from later to earlier vertices")
    add("levels", cmd_levels, "level of every vertex")
    add("cones", cmd_cones, "classes of homologous vertices")
    add("closure-ext", cmd_closure_ext, "closure-extension generated by --vertex").add_argument(
        "--vertex", type=int, required=True)
    add("tri-compare", cmd_tri_compare, "compare two ordered closure-extension types",
        ("first", "second"))
    add("adm-order", cmd_adm_order, "canonical admissible order")
    add("check-adm", cmd_check_adm, "check an ordered oriented graph for admissibility")
    p = add("check-extension", cmd_check_extension,
            "does an admissible order of the input extend --order on the --part sets")
    p.add_argument("--part", action="append", default=[], help="successor-closed part (repeatable)")
    p.add_argument("--order", required=True, help="joint order on the union of the parts")
    for name, func, text in (("build-tree", cmd_build_tree, "tree gadget T0(q) or T1(q)"),
                             ("attach", cmd_attach, "hang tree gadgets on every sink"),
                             ("reorient", cmd_reorient, "attach trees, then point them at heads"),
                             ("build-witness", cmd_build_witness, "witness ordered graph")):
        if name == "build-tree":
            p = add(name, func, text, ())
            p.add_argument("kind", choices=gadgets.KINDS)
        else:
            p = add(name, func, text)
            p.add_argument("--kind", choices=gadgets.KINDS, default="T0")
        p.add_argument("-q", type=int, default=1)
    add("pad", cmd_pad, "add a sink to every out-degree-1 vertex")
    add("check-witness", cmd_check_witness, "check a build-witness document")
    p = add("reachable", cmd_reachable, "vertices within directed distance -n of --vertex")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    add("incompat", cmd_incompat, "forest vs 4-cycle check for T0(q), T1(q)", ()).add_argument(
        "-q", type=int, default=1)
    p = add("generic", cmd_generic, "finite approximation of the generic structure", ())
    p.add_argument("--mode", choices=generic.MODES, default="graph_C1")
    p.add_argument("--rounds", type=int, default=2)
    p.add_argument("-t", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=2000)
    add("verify-extension", cmd_verify_extension,
        "fraction of one-point extension tasks realized").add_argument("-t", type=int, default=3)
    add("lab-enumerate", cmd_lab_enumerate, "list acyclic orientations with out-degree <= k"
        ).add_argument("-k", type=int, default=2)
    p = add("lab-amalgamation", cmd_lab_amalgamation, "exhaustive free-amalgamation check", ())
    p.add_argument("--notion", choices=("le1", "scl"), default="le1")
    p.add_argument("--bound", type=int, default=3)
    add("lab-expansion", cmd_lab_expansion, "expansion-property check for A inside B",
        ("first", "second")).add_argument("--kind", choices=lab.EXPANSION_KINDS, default="order")
    p = add("lab-wap", cmd_lab_wap, "bounded search for a weak-amalgamation witness")
    p.add_argument("--notion", choices=lab.NOTIONS, default="le1_ordered")
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--b-bound", type=int, default=1)
    p.add_argument("--c-bound", type=int, default=2)
    add("normalize", cmd_normalize, "re-serialize a document in normal form")
    add("export-dot", cmd_export_dot, "DOT rendering of a structure")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except (DocumentError, UsageError, StructureError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
