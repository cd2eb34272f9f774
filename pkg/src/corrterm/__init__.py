"""Heegaard Floer correction terms of double branched covers of alternating
links, with the genus, Z₂-norm and complexity bounds they imply."""

from .blackgraph import BlackGraph, black_graph_of_braid, load_graph, wheel_graph
from .bounds import Family, bounds_report
from .braidlang import BraidWord, STWord, family_braid, parse_braid
from .dinv import d_invariant, d_table
from .goeritz import GoeritzForm, goeritz_form

__all__ = [
    "BlackGraph",
    "BraidWord",
    "Family",
    "GoeritzForm",
    "STWord",
    "black_graph_of_braid",
    "bounds_report",
    "d_invariant",
    "d_table",
    "family_braid",
    "goeritz_form",
    "load_graph",
    "parse_braid",
    "wheel_graph",
]

__version__ = "0.1.0"
