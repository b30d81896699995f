"""Spectral and combinatorial toolkit for small signed graphs."""

from .sgcore import SignedGraph, from_edge_list, load, loads, dump, dumps

__version__ = "0.1.0"

__all__ = ["SignedGraph", "dump", "dumps", "from_edge_list", "load", "loads"]
