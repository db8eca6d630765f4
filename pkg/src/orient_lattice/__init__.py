"""Distributive lattices of graph orientations and the structures they encode.

Orientations with a fixed circulation, d-factors of planar bipartite graphs,
domino and lozenge tilings, alternating sign matrices and spanning trees are
all handled through height functions on an embedded multigraph.
"""

from .errors import LatticeError
from .families import Instance, generate
from .graph import DirectedEdge, MultiGraph, build_graph, dual_graph, embedding
from .matchings import DFactorLattice, enumerate_dfactors
from .orientations import EdgeBias, Orientation, OrientationLattice
from .poset import HasseDiagram
from .torus import TorusDimers, torus_instance
from .trees import CrossingTrees, EmbeddedTrees, TreeLattice

__version__ = "0.1.0"

__all__ = [
    "CrossingTrees",
    "DFactorLattice",
    "DirectedEdge",
    "EdgeBias",
    "EmbeddedTrees",
    "HasseDiagram",
    "Instance",
    "LatticeError",
    "MultiGraph",
    "Orientation",
    "OrientationLattice",
    "TorusDimers",
    "TreeLattice",
    "build_graph",
    "dual_graph",
    "embedding",
    "enumerate_dfactors",
    "generate",
    "torus_instance",
]
