"""Hückel and free-electron band gaps of conjugated oligomers and polymers."""

from ._core import (
    GraphError,
    Model,
    Monomer,
    NumericError,
    ParseError,
    band_edges,
    band_structure,
    catalog,
    counting_breakpoints,
    fe_gap,
    fe_levels,
    gap_sweep,
    hmo_gap,
    load_monomer,
    monomer,
    oligomer_adjacency,
    parse_monomer,
    polymer_gap,
)

__all__ = [
    "GraphError",
    "Model",
    "Monomer",
    "NumericError",
    "ParseError",
    "band_edges",
    "band_structure",
    "catalog",
    "counting_breakpoints",
    "fe_gap",
    "fe_levels",
    "gap_sweep",
    "hmo_gap",
    "load_monomer",
    "monomer",
    "oligomer_adjacency",
    "parse_monomer",
    "polymer_gap",
]
