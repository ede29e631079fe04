"""Largest triangles on skew edges of a unit-volume brick."""

from .certificate import Certificate, Witness
from .errors import DomainError, NoSolution
from .geometry import Brick, EdgeId, Placement, SkewTriple, enumerate_skew_triples, triangle_metrics
from .optimizer import (
    SearchDomain,
    SearchSettings,
    global_max_equilateral,
    global_max_min_side,
    max_equilateral_side,
)

__all__ = [
    "Brick",
    "Certificate",
    "DomainError",
    "EdgeId",
    "NoSolution",
    "Placement",
    "SearchDomain",
    "SearchSettings",
    "SkewTriple",
    "Witness",
    "enumerate_skew_triples",
    "global_max_equilateral",
    "global_max_min_side",
    "max_equilateral_side",
    "triangle_metrics",
]
