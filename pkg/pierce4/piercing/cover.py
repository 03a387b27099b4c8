"""Second transversal, the region of admissible translations and its four-point cover."""

import logging
from typing import List

import numpy as np

from pierce4.errors import InvalidGeometry, RatioExceeded
from pierce4.geometry import ConvexPolygon, Line, Parallelogram, as_vec2, cross, line_distance_to_polygon

logger = logging.getLogger(__name__)

RATIO_TOL = 1e-9
PARALLEL_TOL = 1e-9
QUARTERS = ((0, 0), (1, 0), (0, 1), (1, 1))


def lift_to_line(t: float, axis_normal) -> Line:
    """The line {x : x . axis_normal = t}."""
    return Line(as_vec2(axis_normal), t)


def region_R(Q: Parallelogram, ell: Line, ell_prime: Line) -> Parallelogram:
    """Translations x for which Q + x meets both lines: the translate z - Q, z = ell ∩ ell_prime.

    ell must run along Q.e1 and ell_prime along Q.e2.
    """
    u, v = Q.directions
    if not ell.direction.is_parallel(u, PARALLEL_TOL):
        raise InvalidGeometry("first line is not parallel to the first side of Q",
                              {"line_deg": ell.direction.degrees, "side_deg": u.degrees})
    if not ell_prime.direction.is_parallel(v, PARALLEL_TOL):
        raise InvalidGeometry("second line is not parallel to the second side of Q",
                              {"line_deg": ell_prime.direction.degrees, "side_deg": v.degrees})
    z = ell.intersection(ell_prime)
    return Parallelogram(z - Q.anchor, -Q.e1, -Q.e2)


def _scale_along(region_edge: np.ndarray, edge: np.ndarray) -> float:
    """rho with region_edge = -rho * edge."""
    norm2 = float(edge @ edge)
    off_axis = abs(cross(region_edge, edge)) / np.sqrt(norm2 * float(region_edge @ region_edge))
    rho = -float(region_edge @ edge) / norm2
    if off_axis > PARALLEL_TOL or rho <= 0:
        raise InvalidGeometry("region is not a scaled copy of -P",
                              {"region_edge": region_edge.tolist(), "edge": edge.tolist()})
    return rho


def four_cover(regionR: Parallelogram, P: Parallelogram) -> List[np.ndarray]:
    """Points a_k such that the four translates -P + a_k cover regionR.

    Each a_k is the quarter corner O + d1 f1/2 + d2 f2/2 of the region
    shifted by P's anchor, so -P + a_k contains quarter k exactly.
    """
    rho = max(_scale_along(regionR.e1, P.e1), _scale_along(regionR.e2, P.e2))
    if rho > 2.0 + RATIO_TOL:
        raise RatioExceeded("region is more than twice the piercing parallelogram", {"rho": rho})
    logger.debug(f"Covering region with rho={rho:.6f}")
    return [
        regionR.anchor + 0.5 * d1 * regionR.e1 + 0.5 * d2 * regionR.e2 + P.anchor
        for d1, d2 in QUARTERS
    ]


def cover_copies(P: Parallelogram, points: List[np.ndarray]) -> List[Parallelogram]:
    """The translates -P + a for each piercing point a."""
    minus_p = P.negated()
    return [minus_p.translated(a) for a in points]


def in_region_K(body: ConvexPolygon, x, ell: Line, ell_prime: Line, tol: float = 1e-9) -> bool:
    """Whether K + x meets both lines."""
    moved = body.translated(x)
    return line_distance_to_polygon(ell, moved) <= tol and line_distance_to_polygon(ell_prime, moved) <= tol
