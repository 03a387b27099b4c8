"""Parallelograms given by an anchor and two edge vectors."""

from dataclasses import dataclass

import numpy as np

from pierce4.errors import InvalidGeometry
from pierce4.geometry.polygon import ConvexPolygon
from pierce4.geometry.primitives import AffineMap, Direction, Point2, Vec2, VecLike, as_vec2, cross


@dataclass(frozen=True, eq=False)
class Parallelogram:
    """Vertices anchor, anchor+e1, anchor+e1+e2, anchor+e2 with cross(e1, e2) > 0."""

    anchor: Point2
    e1: Vec2
    e2: Vec2

    def __post_init__(self):
        object.__setattr__(self, "anchor", as_vec2(self.anchor))
        object.__setattr__(self, "e1", as_vec2(self.e1))
        object.__setattr__(self, "e2", as_vec2(self.e2))
        if not cross(self.e1, self.e2) > 0:
            raise InvalidGeometry(
                "parallelogram must be positively oriented with nonzero area",
                {"e1": self.e1.tolist(), "e2": self.e2.tolist()},
            )

    @classmethod
    def from_oriented(cls, anchor: VecLike, e1: VecLike, e2: VecLike) -> "Parallelogram":
        """Build from edges of either orientation, swapping them when clockwise."""
        e1, e2 = as_vec2(e1), as_vec2(e2)
        if cross(e1, e2) < 0:
            e1, e2 = e2, e1
        return cls(anchor, e1, e2)

    @property
    def vertices(self) -> np.ndarray:
        a = self.anchor
        return np.array([a, a + self.e1, a + self.e1 + self.e2, a + self.e2])

    @property
    def center(self) -> Point2:
        return self.anchor + 0.5 * (self.e1 + self.e2)

    @property
    def area(self) -> float:
        return cross(self.e1, self.e2)

    @property
    def side_lengths(self) -> tuple:
        return float(np.hypot(*self.e1)), float(np.hypot(*self.e2))

    @property
    def directions(self) -> tuple:
        return Direction.from_vector(self.e1), Direction.from_vector(self.e2)

    def to_polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.vertices)

    def coordinates(self, points: VecLike) -> np.ndarray:
        """(s, t) with point = anchor + s e1 + t e2."""
        basis = np.column_stack([self.e1, self.e2])
        rel = np.atleast_2d(np.asarray(points, dtype=float)) - self.anchor
        return np.linalg.solve(basis, rel.T).T

    def contains(self, points: VecLike, tol: float = 0.0) -> np.ndarray:
        """Membership in parameter space, tol measured in (s, t) units."""
        st = self.coordinates(points)
        return np.all((st >= -tol) & (st <= 1.0 + tol), axis=1)

    def translated(self, t: VecLike) -> "Parallelogram":
        return Parallelogram(self.anchor + as_vec2(t), self.e1, self.e2)

    def negated(self) -> "Parallelogram":
        """-P; the edge vectors are negated and the orientation is preserved."""
        return Parallelogram(-self.anchor, -self.e1, -self.e2)

    def scaled_about_center(self, factor: float) -> "Parallelogram":
        c = self.center
        e1, e2 = factor * self.e1, factor * self.e2
        return Parallelogram(c - 0.5 * (e1 + e2), e1, e2)

    def transformed(self, affine: AffineMap) -> "Parallelogram":
        return Parallelogram.from_oriented(
            affine.apply(self.anchor), affine.apply_vector(self.e1), affine.apply_vector(self.e2)
        )

    def to_dict(self) -> dict:
        return {"anchor": self.anchor.tolist(), "e1": self.e1.tolist(), "e2": self.e2.tolist()}

    def __repr__(self) -> str:
        return f"Parallelogram(anchor={self.anchor.tolist()}, e1={self.e1.tolist()}, e2={self.e2.tolist()})"
