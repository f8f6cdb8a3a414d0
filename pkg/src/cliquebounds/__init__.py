"""Spectral bounds on clique and independence numbers, checked against exact oracles."""

from .config import DEFAULT_TOLERANCES, Tolerances
from .graph import Graph, complement, parse_edge_list, write_edge_list

__all__ = ["DEFAULT_TOLERANCES", "Graph", "Tolerances", "complement", "parse_edge_list", "write_edge_list"]
