"""Finite combinatorics of sparse graphs: orientations, strong substructures,
admissible orders, tree gadgets and generic structures."""

from .structures import Graph, OrderedGraph, OrientedGraph, StructureError

__version__ = "0.1.0"

__all__ = ["Graph", "OrderedGraph", "OrientedGraph", "StructureError"]
