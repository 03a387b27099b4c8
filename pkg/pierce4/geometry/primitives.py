"""Planar primitives: vectors, directions, lines, strips and affine maps."""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from pierce4.errors import DegenerateLines, InvalidGeometry

Vec2 = np.ndarray
Point2 = np.ndarray
VecLike = Union[np.ndarray, Iterable[float]]

UNIT_TOL = 1e-12


def as_vec2(value: VecLike) -> Vec2:
    """Coerce to a finite float64 array of shape (2,)."""
    arr = np.asarray(value, dtype=float)
    if arr.shape != (2,):
        raise InvalidGeometry(f"expected a 2-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidGeometry("non-finite coordinate", {"value": arr.tolist()})
    return arr


def as_points(values: VecLike) -> np.ndarray:
    """Coerce to a finite float64 array of shape (n, 2)."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidGeometry(f"expected an (n, 2) array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidGeometry("non-finite coordinate")
    return arr


def cross(a: VecLike, b: VecLike) -> float:
    """z-component of the planar cross product."""
    return float(a[0] * b[1] - a[1] * b[0])


def perp(v: VecLike) -> Vec2:
    """Counterclockwise rotation by a quarter turn."""
    return np.array([-v[1], v[0]], dtype=float)


@dataclass(frozen=True)
class Direction:
    """Undirected direction, canonicalized to an angle in [0, pi)."""

    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise InvalidGeometry("non-finite direction angle")
        theta = math.fmod(self.theta, math.pi)
        if theta < 0:
            theta += math.pi
        if theta >= math.pi:
            theta = 0.0
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_vector(cls, v: VecLike) -> "Direction":
        v = as_vec2(v)
        if np.hypot(*v) == 0:
            raise InvalidGeometry("zero vector has no direction")
        return cls(math.atan2(v[1], v[0]))

    @classmethod
    def from_degrees(cls, degrees: float) -> "Direction":
        return cls(math.radians(degrees))

    @property
    def degrees(self) -> float:
        return math.degrees(self.theta)

    @property
    def vector(self) -> Vec2:
        """Unit vector (cos, sin); its y-component is never negative."""
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    @property
    def normal(self) -> Vec2:
        """Unit normal, the direction vector turned counterclockwise."""
        return perp(self.vector)

    def is_parallel(self, other: "Direction", tol: float = 1e-9) -> bool:
        diff = abs(self.theta - other.theta)
        return min(diff, math.pi - diff) <= tol


@dataclass(frozen=True, eq=False)
class Line:
    """The set {x : normal . x = offset}."""

    normal: Vec2
    offset: float

    def __post_init__(self):
        normal = as_vec2(self.normal)
        if abs(np.hypot(*normal) - 1.0) > UNIT_TOL:
            raise InvalidGeometry("line normal must be a unit vector", {"normal": normal.tolist()})
        if not math.isfinite(self.offset):
            raise InvalidGeometry("non-finite line offset")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def through(cls, point: VecLike, direction: Direction) -> "Line":
        normal = direction.normal
        return cls(normal, float(normal @ as_vec2(point)))

    @property
    def direction(self) -> Direction:
        return Direction.from_vector(perp(self.normal))

    def signed_distance(self, points: VecLike) -> Union[float, np.ndarray]:
        return np.asarray(points, dtype=float) @ self.normal - self.offset

    def translated(self, t: VecLike) -> "Line":
        return Line(self.normal, self.offset + float(self.normal @ as_vec2(t)))

    def intersection(self, other: "Line") -> Point2:
        matrix = np.vstack([self.normal, other.normal])
        if abs(np.linalg.det(matrix)) <= 1e-12:
            raise DegenerateLines("lines are parallel")
        return np.linalg.solve(matrix, np.array([self.offset, other.offset]))

    def to_dict(self) -> dict:
        return {"normal": self.normal.tolist(), "offset": self.offset, "direction_deg": self.direction.degrees}

    def __repr__(self) -> str:
        return f"Line(normal={self.normal.tolist()}, offset={self.offset!r})"


@dataclass(frozen=True, eq=False)
class Strip:
    """The slab {x : c_lo <= normal . x <= c_hi}.

    A supporting strip also records the points where the body touches its
    two boundary lines, lower line first.
    """

    normal: Vec2
    c_lo: float
    c_hi: float
    witnesses: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "normal", as_vec2(self.normal))
        if self.c_lo > self.c_hi:
            raise InvalidGeometry("strip range is empty", {"c_lo": self.c_lo, "c_hi": self.c_hi})
        if self.witnesses is not None:
            object.__setattr__(self, "witnesses", as_points(self.witnesses))

    @property
    def width(self) -> float:
        return self.c_hi - self.c_lo

    @property
    def lower(self) -> Line:
        return Line(self.normal, self.c_lo)

    @property
    def upper(self) -> Line:
        return Line(self.normal, self.c_hi)

    def contains(self, point: VecLike, tol: float = 0.0) -> bool:
        value = float(self.normal @ as_vec2(point))
        return self.c_lo - tol <= value <= self.c_hi + tol


@dataclass(frozen=True, eq=False)
class AffineMap:
    """x -> linear @ x + translation with an invertible linear part."""

    linear: np.ndarray
    translation: Vec2

    def __post_init__(self):
        linear = np.asarray(self.linear, dtype=float)
        if linear.shape != (2, 2) or not np.all(np.isfinite(linear)):
            raise InvalidGeometry("affine linear part must be a finite 2x2 matrix")
        scale = float(np.max(np.abs(linear)))
        if scale == 0.0 or abs(np.linalg.det(linear)) <= 1e-12 * scale * scale:
            raise InvalidGeometry("affine map is not invertible", {"linear": linear.tolist()})
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", as_vec2(self.translation))

    @classmethod
    def rotation(cls, theta: float) -> "AffineMap":
        c, s = math.cos(theta), math.sin(theta)
        return cls(np.array([[c, -s], [s, c]]), np.zeros(2))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def apply(self, points: VecLike) -> np.ndarray:
        """Map a point or an (n, 2) array of points."""
        pts = np.asarray(points, dtype=float)
        return pts @ self.linear.T + self.translation

    def apply_vector(self, vectors: VecLike) -> np.ndarray:
        return np.asarray(vectors, dtype=float) @ self.linear.T

    def inverse(self) -> "AffineMap":
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.translation)
