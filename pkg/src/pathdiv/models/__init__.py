"""
Domain models for Pathdiv.

Immutable value types shared by the geometry, coloring, search, rounding
and verification code.
"""

from pathdiv.models.division import Division
from pathdiv.models.instance import (
    AdditiveValuation,
    Instance,
    TableValuation,
    Valuation,
    ValuationKind,
)
from pathdiv.models.interval import EMPTY, Interval
from pathdiv.models.outcome import BipartiteColorGraph, SearchMode, SearchOutcome
from pathdiv.models.simplex import (
    ElementarySimplex,
    KnifeVector,
    PartialDivision,
    SimplexDecomposition,
    is_valid_vertex,
)

__all__ = [
    "EMPTY",
    "AdditiveValuation",
    "BipartiteColorGraph",
    "Division",
    "ElementarySimplex",
    "Instance",
    "Interval",
    "KnifeVector",
    "PartialDivision",
    "SearchMode",
    "SearchOutcome",
    "SimplexDecomposition",
    "TableValuation",
    "Valuation",
    "ValuationKind",
    "is_valid_vertex",
]
