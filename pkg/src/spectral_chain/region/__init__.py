"""Symbolic calculus of compact plane regions."""

from .core import (
    OpenRegion,
    SpectralRegion,
    SymbolicDifference,
    accumulation,
    boundary,
    canonicalize,
    describe,
    difference,
    interior,
    intersection,
    is_line_contained,
    isolated_points,
    primitive_in_region,
    region,
    subset,
    union,
    union_all,
    union_with_open,
)
from .hull import (
    Hole,
    HullReport,
    PocetnaReport,
    check_pocetna,
    connected_hull,
    has_no_holes,
    hull,
)
from .primitives import Circle, ClosedDisk, Point, Primitive, Segment, primitive_from_json

__all__ = [
    "Circle",
    "ClosedDisk",
    "Hole",
    "HullReport",
    "OpenRegion",
    "PocetnaReport",
    "Point",
    "Primitive",
    "Segment",
    "SpectralRegion",
    "SymbolicDifference",
    "accumulation",
    "boundary",
    "canonicalize",
    "check_pocetna",
    "connected_hull",
    "describe",
    "difference",
    "has_no_holes",
    "hull",
    "interior",
    "intersection",
    "is_line_contained",
    "isolated_points",
    "primitive_from_json",
    "primitive_in_region",
    "region",
    "subset",
    "union",
    "union_all",
    "union_with_open",
]
