"""Coloring invariants of trivalent ribbon graphs with perfect matchings.

Exact state-sum invariants (Penrose polynomial, Penrose-Kauffman
bracket, color bracket, 2-variable total face color polynomial) of
perfect-matching diagrams, with independent certifiers: a diagrammatic
tensor contraction, a brute-force coloring oracle on the abstract
graph, and a numerical filtered n-color homology builder.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .budget import BudgetError
from .invariants import (
    census,
    color_bracket,
    count_pm_colorings,
    penrose_polynomial,
    pk_bracket,
    tensor_contraction,
    total_polynomial,
)
from .pd import PdSyntaxError, PdValidationError, PmDiagram
from .poly import IntPoly, parse_poly
from .ribbon import RibbonGraph, blowup, immerse, isaacs_jm, perfect_matchings

__all__ = [
    "BudgetError",
    "IntPoly",
    "PdSyntaxError",
    "PdValidationError",
    "PmDiagram",
    "RibbonGraph",
    "blowup",
    "census",
    "color_bracket",
    "corpus_path",
    "count_pm_colorings",
    "immerse",
    "isaacs_jm",
    "parse_poly",
    "penrose_polynomial",
    "perfect_matchings",
    "pk_bracket",
    "tensor_contraction",
    "total_polynomial",
]

__version__ = "0.1.0"


def corpus_path(name: str) -> Path:
    """Path of a bundled corpus file, e.g. ``corpus_path("theta.pd")``."""
    return Path(str(resources.files("facecolor") / "corpus" / name))
