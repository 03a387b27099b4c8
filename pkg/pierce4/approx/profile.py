"""Horizontal chord profile l(h) of a body normalized to the unit slab."""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from pierce4.errors import DegenerateSupport, InvalidChord
from pierce4.geometry import ConvexPolygon, perp
from pierce4.geometry.polygon import chord_bounds

logger = logging.getLogger(__name__)

SUPPORT_TOL = 1e-9
PLATEAU_TOL = 1e-12
FLAT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ChordProfile:
    """Piecewise-linear, unimodal chord length over the vertex heights."""

    poly: ConvexPolygon
    heights: np.ndarray
    lengths: np.ndarray
    m: float
    h_a: float
    h_b: float
    rising: Tuple[np.ndarray, np.ndarray]  # (lengths, heights) on [0, h_a], increasing
    falling: Tuple[np.ndarray, np.ndarray]  # (lengths, heights) on [h_b, 1], lengths increasing

    @property
    def plateau(self) -> Tuple[float, float]:
        return self.h_a, self.h_b

    @property
    def has_plateau(self) -> bool:
        return self.h_b > self.h_a

    def length_at(self, h) -> np.ndarray:
        return np.interp(h, self.heights, self.lengths)

    def lower(self, l: float) -> float:
        """h1(l), the solution of l(h) = l on the rising branch."""
        return float(np.interp(l, *self.rising))

    def upper(self, l: float) -> float:
        """h2(l), the solution of l(h) = l on the falling branch."""
        return float(np.interp(l, *self.falling))

    def solve(self, l: float) -> Tuple[float, float]:
        """(h1, h2) for l in (0, m]; at l = m the plateau endpoints."""
        if not 0.0 < l <= self.m:
            raise InvalidChord(f"chord length {l!r} outside (0, {self.m!r}]", {"l": l, "m": self.m})
        if l >= self.m:
            return self.h_a, self.h_b
        return self.lower(l), self.upper(l)

    def chord(self, h: float) -> Tuple[float, float]:
        left, right = chord_bounds(self.poly.vertices, [h])
        return float(left[0]), float(right[0])


def build_chord_profile(poly: ConvexPolygon) -> ChordProfile:
    """Sample l(h) at every vertex height; exact for polygons."""
    heights = np.unique(poly.vertices[:, 1])
    left, right = chord_bounds(poly.vertices, heights)
    lengths = right - left
    if lengths[0] > SUPPORT_TOL or lengths[-1] > SUPPORT_TOL:
        raise DegenerateSupport(
            "chord profile does not vanish at the supporting lines",
            {"l0": float(lengths[0]), "l1": float(lengths[-1])},
        )
    lengths[0] = lengths[-1] = 0.0

    m = float(lengths.max())
    on_plateau = np.flatnonzero(lengths >= m - PLATEAU_TOL)
    ia, ib = int(on_plateau[0]), int(on_plateau[-1])

    rise_l = np.maximum.accumulate(lengths[: ia + 1])
    rise_l[-1] = m
    fall_l = np.maximum.accumulate(lengths[ib:][::-1])
    fall_l[-1] = m
    rising = (rise_l, heights[: ia + 1].copy())
    falling = (fall_l, heights[ib:][::-1].copy())

    return ChordProfile(
        poly=poly,
        heights=heights,
        lengths=lengths,
        m=m,
        h_a=float(heights[ia]),
        h_b=float(heights[ib]),
        rising=rising,
        falling=falling,
    )


def _clip_halfplane(vertices: np.ndarray, normal: np.ndarray, offset: float) -> np.ndarray:
    """Part of a convex polygon with normal . x <= offset."""
    out = []
    n = len(vertices)
    values = vertices @ normal - offset
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        va, vb = values[i], values[(i + 1) % n]
        if va <= 0:
            out.append(a)
        if (va < 0 < vb) or (vb < 0 < va):
            out.append(a + (b - a) * (va / (va - vb)))
    return np.array(out)


def _flat_support(vertices: np.ndarray, level: float) -> np.ndarray:
    return np.flatnonzero(np.abs(vertices[:, 1] - level) <= FLAT_TOL)


def needs_shave(poly: ConvexPolygon) -> bool:
    """Whether the bottom or top support of a normalized body is a horizontal edge."""
    return len(_flat_support(poly.vertices, 0.0)) > 1 or len(_flat_support(poly.vertices, 1.0)) > 1


def eps_shave(poly: ConvexPolygon, eps: float) -> ConvexPolygon:
    """Tilt horizontal top/bottom edges by an eps-cut so both supports are vertices."""
    vertices = poly.vertices.copy()

    bottom = _flat_support(vertices, 0.0)
    if len(bottom) > 1:
        p, q = sorted((vertices[i] for i in bottom), key=lambda v: v[0])
        # Keep the right endpoint q, cut through p lifted by eps
        normal = perp((p + np.array([0.0, eps])) - q)
        if normal @ p < normal @ q:
            normal = -normal
        vertices = _clip_halfplane(vertices, normal, float(normal @ q))
        logger.debug(f"Shaved bottom edge [{p.tolist()}, {q.tolist()}] with eps={eps:g}")

    top = _flat_support(vertices, 1.0)
    if len(top) > 1:
        p, q = sorted((vertices[i] for i in top), key=lambda v: v[0])
        # Keep the left endpoint p, cut through q lowered by eps
        normal = perp((q - np.array([0.0, eps])) - p)
        if normal @ q < normal @ p:
            normal = -normal
        vertices = _clip_halfplane(vertices, normal, float(normal @ p))
        logger.debug(f"Shaved top edge [{p.tolist()}, {q.tolist()}] with eps={eps:g}")

    if len(vertices) == len(poly.vertices) and np.array_equal(vertices, poly.vertices):
        return poly
    # The kept endpoints stay on y=0 and y=1, so the unit slab is unchanged
    vertices[np.abs(vertices[:, 1]) <= FLAT_TOL, 1] = 0.0
    vertices[np.abs(vertices[:, 1] - 1.0) <= FLAT_TOL, 1] = 1.0
    return ConvexPolygon(vertices)
