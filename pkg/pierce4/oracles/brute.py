"""Exact and exhaustive piercing oracles at desk scale."""

import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from shapely.geometry import Polygon as ShapelyPolygon
import shapely

from pierce4.errors import TooLarge
from pierce4.geometry import ConvexPolygon, signed_distance
from pierce4.transversal.instance import Interval

logger = logging.getLogger(__name__)

MAX_POLYS = 24
MAX_K = 4
# Hit sets are packed into uint64 masks
MASK_BITS = 64
HIT_TOL = 1e-9


# ============ Intervals ============

def greedy_interval_piercing(intervals: Sequence[Interval]) -> List[float]:
    """Minimum piercing set of intervals: sweep by right endpoint."""
    points: List[float] = []
    for iv in sorted(intervals, key=lambda iv: iv.hi):
        if not points or iv.lo > points[-1]:
            points.append(iv.hi)
    return points


def exhaustive_interval_piercing(intervals: Sequence[Interval]) -> int:
    """Minimum piercing number by trying endpoint subsets of growing size."""
    if not intervals:
        return 0
    candidates = sorted({iv.hi for iv in intervals} | {iv.lo for iv in intervals})
    for k in range(1, len(intervals) + 1):
        for subset in itertools.combinations(candidates, k):
            if all(any(iv.lo <= t <= iv.hi for t in subset) for iv in intervals):
                return k
    return len(intervals)


# ============ Polygons ============

def _to_shapely(poly: ConvexPolygon) -> ShapelyPolygon:
    return ShapelyPolygon(poly.vertices)


def candidate_points(polys: Sequence[ConvexPolygon]) -> np.ndarray:
    """All vertices plus all pairwise boundary intersection points."""
    chunks = [p.vertices for p in polys]
    rings = [_to_shapely(p).exterior for p in polys]
    for a, b in itertools.combinations(range(len(polys)), 2):
        if not rings[a].envelope.intersects(rings[b].envelope):
            continue
        crossing = rings[a].intersection(rings[b])
        if not crossing.is_empty:
            chunks.append(shapely.get_coordinates(crossing))
    return np.vstack(chunks)


def hit_masks(polys: Sequence[ConvexPolygon], points: np.ndarray, tol: float = HIT_TOL) -> np.ndarray:
    """Boolean matrix [point, polygon] of containment within tol."""
    hits = np.zeros((len(points), len(polys)), dtype=bool)
    for j, poly in enumerate(polys):
        x0, y0, x1, y1 = poly.bounds()
        near = np.flatnonzero(
            (points[:, 0] >= x0 - tol) & (points[:, 0] <= x1 + tol)
            & (points[:, 1] >= y0 - tol) & (points[:, 1] <= y1 + tol)
        )
        if len(near):
            hits[near, j] = signed_distance(poly, points[near]) <= tol
    return hits


def _dominant(points: np.ndarray, hits: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Drop candidates whose hit set is contained in another's."""
    bits = (hits.astype(np.uint64) << np.arange(hits.shape[1], dtype=np.uint64)).sum(axis=1)
    values, first = np.unique(bits, return_index=True)
    masks = {int(v): int(i) for v, i in zip(values, first) if v}
    keys = sorted(masks, key=lambda m: -bin(m).count("1"))
    kept: List[int] = []
    for key in keys:
        if not any(key & other == key for other in kept):
            kept.append(key)
    return points[[masks[k] for k in kept]], kept


def _search(masks: List[int], full: int, k: int, chosen: List[int], covered: int) -> Optional[List[int]]:
    if covered == full:
        return chosen
    if len(chosen) == k:
        return None
    # Branch on the lowest uncovered polygon: some chosen point must hit it
    missing = full & ~covered
    target = missing & -missing
    for i, mask in enumerate(masks):
        if mask & target:
            found = _search(masks, full, k, chosen + [i], covered | mask)
            if found is not None:
                return found
    return None


def brute_force_piercing(
    polys: Sequence[ConvexPolygon],
    k_max: int,
    max_polys: int = MAX_POLYS,
    tol: float = HIT_TOL,
) -> Optional[Tuple[int, np.ndarray]]:
    """Minimum k <= k_max with a witness piercing set, or None."""
    if len(polys) > min(max_polys, MASK_BITS) or k_max > MAX_K:
        raise TooLarge(
            "brute-force piercing beyond desk scale",
            {"polys": len(polys), "k_max": k_max, "max_polys": max_polys},
        )
    if not polys:
        return 0, np.zeros((0, 2))

    points = candidate_points(polys)
    hits = hit_masks(polys, points, tol)
    dominant_points, masks = _dominant(points, hits)
    full = (1 << len(polys)) - 1
    logger.debug(f"Brute force: {len(points)} candidates, {len(masks)} dominant hit sets")

    for k in range(1, k_max + 1):
        chosen = _search(masks, full, k, [], 0)
        if chosen is not None:
            return k, dominant_points[chosen]
    return None


def _bounding_box(polys: Sequence[ConvexPolygon]) -> Tuple[float, float, float, float]:
    bounds = np.array([p.bounds() for p in polys])
    return bounds[:, 0].min(), bounds[:, 1].min(), bounds[:, 2].max(), bounds[:, 3].max()


def grid_cell_radius(polys: Sequence[ConvexPolygon], resolution: int = 200) -> float:
    """Distance from any point of the bounding box to its nearest grid point, at most."""
    x0, y0, x1, y1 = _bounding_box(polys)
    return 0.5 * float(np.hypot(x1 - x0, y1 - y0)) / (resolution - 1)


def grid_scan_piercing(
    polys: Sequence[ConvexPolygon],
    k_max: int,
    resolution: int = 200,
    tol: float = 0.0,
) -> Optional[int]:
    """Minimum k <= k_max using only points of a regular grid over the bounding box.

    With tol = 0 the answer is never below the true minimum. With tol at least
    grid_cell_radius() every true piercing point has a grid point close enough,
    so the answer is never above it.
    """
    if len(polys) > MASK_BITS:
        raise TooLarge("grid scan beyond mask width", {"polys": len(polys)})
    x0, y0, x1, y1 = _bounding_box(polys)
    xs, ys = np.meshgrid(np.linspace(x0, x1, resolution), np.linspace(y0, y1, resolution))
    grid = np.column_stack([xs.ravel(), ys.ravel()])
    hits = hit_masks(polys, grid, tol=tol)
    _, masks = _dominant(grid, hits)
    full = (1 << len(polys)) - 1
    for k in range(1, k_max + 1):
        if _search(masks, full, k, [], 0) is not None:
            return k
    return None
