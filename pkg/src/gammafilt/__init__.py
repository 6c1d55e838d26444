"""Genus-filtered RNA structures: exact enumeration, generating functions and genus CLT."""

from __future__ import annotations

from .diagram import Diagram, genus, parse_diagram, shadow
from .genfun import g_series, genus_distribution, h_series, p_polynomial, s_series
from .shadows import enumerate_irreducible_shadows, is_polynomial

__all__ = [
    "Diagram",
    "enumerate_irreducible_shadows",
    "g_series",
    "genus",
    "genus_distribution",
    "h_series",
    "is_polynomial",
    "p_polynomial",
    "parse_diagram",
    "s_series",
    "shadow",
]
__version__ = "0.1.0"
