"""Convex polygons and the predicates the piercing pipeline is built on."""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

from pierce4.errors import DegenerateBody, InvalidGeometry
from pierce4.geometry.primitives import (
    AffineMap,
    Direction,
    Line,
    Point2,
    Strip,
    Vec2,
    VecLike,
    as_points,
    as_vec2,
)

DUPLICATE_TOL = 1e-12
COLLINEAR_TOL = 1e-12
REFLEX_TOL = 1e-9
DEFAULT_CONTAIN_TOL = 1e-9
SLAB_SNAP_TOL = 1e-12


def _signed_area(vertices: np.ndarray) -> float:
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _canonicalize(points: np.ndarray) -> np.ndarray:
    """CCW, duplicate-free, strictly convex vertex list; raises if not convex."""
    if len(points) < 3:
        raise InvalidGeometry("a polygon needs at least 3 vertices", {"count": len(points)})
    diameter = float(np.max(pdist(points)))
    if diameter == 0.0:
        raise InvalidGeometry("all vertices coincide")

    # Cyclic duplicates
    keep = []
    for i, p in enumerate(points):
        if not keep or np.hypot(*(p - points[keep[-1]])) > DUPLICATE_TOL * diameter:
            keep.append(i)
    if len(keep) > 1 and np.hypot(*(points[keep[0]] - points[keep[-1]])) <= DUPLICATE_TOL * diameter:
        keep.pop()
    vertices = points[keep]

    if _signed_area(vertices) < 0:
        vertices = vertices[::-1]

    # Collapse collinear runs; anything clearly reflex is rejected
    changed = True
    while changed and len(vertices) >= 3:
        changed = False
        prev_edge = vertices - np.roll(vertices, 1, axis=0)
        next_edge = np.roll(vertices, -1, axis=0) - vertices
        turn = prev_edge[:, 0] * next_edge[:, 1] - prev_edge[:, 1] * next_edge[:, 0]
        scale = np.hypot(prev_edge[:, 0], prev_edge[:, 1]) * np.hypot(next_edge[:, 0], next_edge[:, 1])
        if np.any(turn < -REFLEX_TOL * scale):
            raise InvalidGeometry("polygon is not convex", {"reflex_vertices": np.flatnonzero(turn < 0).tolist()})
        flat = np.flatnonzero(turn <= COLLINEAR_TOL * scale)
        if len(flat):
            vertices = np.delete(vertices, flat[0], axis=0)
            changed = True

    if len(vertices) < 3:
        raise InvalidGeometry("polygon is degenerate (collinear vertices)")

    edges = np.roll(vertices, -1, axis=0) - vertices
    headings = np.arctan2(edges[:, 1], edges[:, 0])
    turning = np.mod(np.roll(headings, -1) - headings, 2 * math.pi)
    if abs(float(turning.sum()) - 2 * math.pi) > 1e-6:
        raise InvalidGeometry("polygon winds more than once")
    return vertices


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon with counterclockwise vertices."""

    vertices: np.ndarray

    def __post_init__(self):
        vertices = _canonicalize(as_points(self.vertices))
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def hull(cls, points: VecLike) -> "ConvexPolygon":
        """Convex hull of a point cloud."""
        pts = as_points(points)
        try:
            hull = ConvexHull(pts)
        except Exception as e:
            raise InvalidGeometry(f"convex hull failed: {e}") from e
        return cls(pts[hull.vertices])

    @classmethod
    def regular(cls, k: int, radius: float = 1.0, center: VecLike = (0.0, 0.0), phase: float = 0.0) -> "ConvexPolygon":
        angles = phase + 2 * math.pi * np.arange(k) / k
        pts = np.column_stack([np.cos(angles), np.sin(angles)]) * radius + as_vec2(center)
        return cls(pts)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"ConvexPolygon({len(self)} vertices)"

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    @cached_property
    def diameter(self) -> float:
        return float(np.max(pdist(self.vertices)))

    @cached_property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @cached_property
    def centroid(self) -> Point2:
        v, w = self.vertices, np.roll(self.vertices, -1, axis=0)
        c = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        return np.array([np.dot(v[:, 0] + w[:, 0], c), np.dot(v[:, 1] + w[:, 1], c)]) / (6.0 * self.area)

    @cached_property
    def difference_body(self) -> "ConvexPolygon":
        return difference_body(self)

    def bounds(self) -> Tuple[float, float, float, float]:
        lo, hi = self.vertices.min(axis=0), self.vertices.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def translated(self, t: VecLike) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + as_vec2(t))

    def scaled(self, factor: float, center: Optional[VecLike] = None) -> "ConvexPolygon":
        c = self.centroid if center is None else as_vec2(center)
        return ConvexPolygon((self.vertices - c) * factor + c)

    def reflected(self) -> "ConvexPolygon":
        """-K, the point reflection through the origin."""
        return ConvexPolygon(-self.vertices)

    def transformed(self, affine: AffineMap) -> "ConvexPolygon":
        return ConvexPolygon(affine.apply(self.vertices))

    def to_list(self) -> list:
        return self.vertices.tolist()


# ============ Support and width ============

def support(poly: ConvexPolygon, n: VecLike) -> Tuple[float, Point2]:
    """max of n . v over the vertices, with the lowest-index maximizer."""
    values = poly.vertices @ as_vec2(n)
    index = int(np.argmax(values))
    return float(values[index]), poly.vertices[index].copy()


def width(poly: ConvexPolygon, n: VecLike) -> float:
    n = as_vec2(n)
    return support(poly, n)[0] + support(poly, -n)[0]


def supporting_strip(poly: ConvexPolygon, n: VecLike) -> Strip:
    """Narrowest slab with normal n containing the polygon, with its touching vertices."""
    n = as_vec2(n)
    c_hi, top = support(poly, n)
    neg_lo, bottom = support(poly, -n)
    return Strip(n, -neg_lo, c_hi, witnesses=np.vstack([bottom, top]))


def projection(poly: ConvexPolygon, n: VecLike) -> Tuple[float, float]:
    """Interval [min, max] of n . x over the polygon."""
    values = poly.vertices @ as_vec2(n)
    return float(values.min()), float(values.max())


# ============ Chords ============

def chord_bounds(vertices: np.ndarray, heights: VecLike) -> Tuple[np.ndarray, np.ndarray]:
    """Left and right x of the horizontal chords at each height (NaN outside)."""
    hs = np.atleast_1d(np.asarray(heights, dtype=float))
    a = vertices
    b = np.roll(vertices, -1, axis=0)
    dy = b[:, 1] - a[:, 1]
    sloped = dy != 0
    a, b, dy = a[sloped], b[sloped], dy[sloped]
    lo = np.minimum(a[:, 1], b[:, 1])
    hi = np.maximum(a[:, 1], b[:, 1])

    h = hs[:, None]
    crosses = (lo[None, :] <= h) & (h <= hi[None, :])
    t = (h - a[None, :, 1]) / dy[None, :]
    xs = a[None, :, 0] + t * (b[None, :, 0] - a[None, :, 0])
    left = np.where(crosses, xs, np.inf).min(axis=1)
    right = np.where(crosses, xs, -np.inf).max(axis=1)
    missing = ~crosses.any(axis=1)
    left[missing] = np.nan
    right[missing] = np.nan
    return left, right


def chord_at_height(poly: ConvexPolygon, h: float) -> Optional[Tuple[float, float]]:
    """Endpoints (x_left, x_right) of the horizontal chord at height h."""
    y_lo, y_hi = float(poly.vertices[:, 1].min()), float(poly.vertices[:, 1].max())
    if h < y_lo - SLAB_SNAP_TOL or h > y_hi + SLAB_SNAP_TOL:
        return None
    h = min(max(h, y_lo), y_hi)
    left, right = chord_bounds(poly.vertices, [h])
    if np.isnan(left[0]):
        return None
    return float(left[0]), float(right[0])


# ============ Minkowski difference ============

def difference_body(poly: ConvexPolygon) -> ConvexPolygon:
    """K + (-K); centrally symmetric about the origin."""
    v = poly.vertices
    diffs = (v[:, None, :] - v[None, :, :]).reshape(-1, 2)
    return ConvexPolygon.hull(diffs)


# ============ Containment ============

def signed_distance(poly: ConvexPolygon, points: VecLike) -> np.ndarray:
    """Euclidean signed distance to the boundary, negative inside."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    a = poly.vertices
    e = poly.edges
    lengths = np.hypot(e[:, 0], e[:, 1])
    rel = pts[:, None, :] - a[None, :, :]
    # Outward distance to each supporting line (CCW: outward is to the right)
    outward = (rel[:, :, 0] * e[None, :, 1] - rel[:, :, 1] * e[None, :, 0]) / lengths[None, :]
    inside = outward.max(axis=1)

    t = np.clip((rel * e[None, :, :]).sum(axis=2) / (lengths**2)[None, :], 0.0, 1.0)
    nearest = a[None, :, :] + t[:, :, None] * e[None, :, :]
    boundary = np.hypot(*(pts[:, None, :] - nearest).transpose(2, 0, 1)).min(axis=1)
    return np.where(inside <= 0, inside, boundary)


def contains_points(poly: ConvexPolygon, points: VecLike, tol: float = DEFAULT_CONTAIN_TOL) -> np.ndarray:
    return signed_distance(poly, points) <= tol


def contains_point(poly: ConvexPolygon, p: VecLike, tol: float = DEFAULT_CONTAIN_TOL) -> bool:
    """True iff p is within signed distance tol of the polygon (negative tol = strict)."""
    return bool(contains_points(poly, [as_vec2(p)], tol)[0])


def contains_polygon(outer: ConvexPolygon, inner: ConvexPolygon, tol: float = DEFAULT_CONTAIN_TOL) -> bool:
    return bool(np.all(contains_points(outer, inner.vertices, tol)))


def containment_slack(outer: ConvexPolygon, inner_vertices: VecLike) -> float:
    """Largest signed distance of the given points to outer (<= 0 means inside)."""
    return float(signed_distance(outer, inner_vertices).max())


def translates_intersect(body: ConvexPolygon, x: VecLike, y: VecLike, tol: float = DEFAULT_CONTAIN_TOL) -> bool:
    """Whether K + x and K + y meet, via x - y in K + (-K)."""
    return contains_point(body.difference_body, as_vec2(x) - as_vec2(y), tol)


def line_distance_to_polygon(line: Line, poly: ConvexPolygon) -> float:
    """0 when the line meets the polygon, otherwise the gap between them."""
    values = line.signed_distance(poly.vertices)
    lo, hi = float(values.min()), float(values.max())
    if lo <= 0.0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


# ============ Normalization ============

def normalize_to_unit_slab(poly: ConvexPolygon, u: Direction) -> Tuple[ConvexPolygon, AffineMap]:
    """Rotate u to horizontal and scale so the supporting lines are y=0 and y=1."""
    rotation = AffineMap.rotation(-u.theta)
    rotated = rotation.apply(poly.vertices)
    y_lo, y_hi = rotated[:, 1].min(), rotated[:, 1].max()
    height = float(y_hi - y_lo)
    if height < 1e-12 * poly.diameter:
        raise DegenerateBody(
            "body has no width perpendicular to the direction",
            {"direction_deg": u.degrees, "width": height},
        )
    scale = 1.0 / height
    x_lo = rotated[:, 0].min()
    affine = AffineMap(scale * rotation.linear, -scale * np.array([x_lo, y_lo]))

    mapped = affine.apply(poly.vertices)
    ys = mapped[:, 1]
    ys[np.abs(ys) <= SLAB_SNAP_TOL] = 0.0
    ys[np.abs(ys - 1.0) <= SLAB_SNAP_TOL] = 1.0
    return ConvexPolygon(mapped), affine
