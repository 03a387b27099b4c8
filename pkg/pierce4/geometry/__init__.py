"""Planar geometry kernel."""

from pierce4.geometry.parallelogram import Parallelogram
from pierce4.geometry.polygon import (
    ConvexPolygon,
    chord_at_height,
    contains_point,
    contains_points,
    contains_polygon,
    difference_body,
    line_distance_to_polygon,
    normalize_to_unit_slab,
    projection,
    signed_distance,
    support,
    supporting_strip,
    translates_intersect,
    width,
)
from pierce4.geometry.primitives import AffineMap, Direction, Line, Strip, as_vec2, cross, perp

__all__ = [
    "AffineMap",
    "ConvexPolygon",
    "Direction",
    "Line",
    "Parallelogram",
    "Strip",
    "as_vec2",
    "chord_at_height",
    "contains_point",
    "contains_points",
    "contains_polygon",
    "cross",
    "difference_body",
    "line_distance_to_polygon",
    "normalize_to_unit_slab",
    "perp",
    "projection",
    "signed_distance",
    "support",
    "supporting_strip",
    "translates_intersect",
    "width",
]
