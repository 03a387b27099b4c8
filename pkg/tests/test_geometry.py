"""Tests for the planar geometry kernel."""

import math

import numpy as np
import pytest
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon

from pierce4.errors import DegenerateLines, InvalidGeometry
from pierce4.geometry import (
    AffineMap,
    ConvexPolygon,
    Direction,
    Line,
    Parallelogram,
    Strip,
    chord_at_height,
    contains_point,
    contains_polygon,
    difference_body,
    line_distance_to_polygon,
    normalize_to_unit_slab,
    signed_distance,
    support,
    supporting_strip,
    translates_intersect,
    width,
)
from pierce4.oracles.generator import random_convex_polygon


def _as_set(points, digits=9):
    return {tuple(np.round(p, digits) + 0.0) for p in np.asarray(points)}


# ============ Construction ============

def test_clockwise_input_is_reversed():
    poly = ConvexPolygon([[0, 0], [0, 1], [1, 1], [1, 0]])
    assert poly.area == pytest.approx(1.0)
    assert _as_set(poly.vertices) == {(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)}


def test_collinear_and_duplicate_vertices_collapse():
    poly = ConvexPolygon([[0, 0], [0.5, 0], [1, 0], [1, 0], [1, 1], [0, 1]])
    assert len(poly) == 4


def test_nonconvex_polygon_rejected():
    with pytest.raises(InvalidGeometry):
        ConvexPolygon([[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]])


def test_nonfinite_coordinates_rejected():
    with pytest.raises(InvalidGeometry):
        ConvexPolygon([[0, 0], [1, math.nan], [0, 1]])


def test_direction_is_canonical():
    assert Direction(math.pi + 0.3).theta == pytest.approx(0.3)
    assert Direction.from_degrees(180.0).theta == pytest.approx(0.0, abs=1e-15)
    assert Direction(-0.25).is_parallel(Direction(math.pi - 0.25))


def test_line_requires_unit_normal():
    with pytest.raises(InvalidGeometry):
        Line(np.array([2.0, 0.0]), 1.0)


def test_parallel_lines_have_no_intersection():
    with pytest.raises(DegenerateLines):
        Line(np.array([0.0, 1.0]), 0.0).intersection(Line(np.array([0.0, 1.0]), 3.0))


def test_strip_range_must_be_ordered():
    strip = Strip(np.array([0.0, 1.0]), 0.0, 1.0)
    assert strip.width == 1.0
    assert strip.contains([5.0, 0.5])
    with pytest.raises(InvalidGeometry):
        Strip(np.array([0.0, 1.0]), 1.0, 0.0)


def test_supporting_strip_records_touching_vertices(triangle, hexagon):
    strip = supporting_strip(triangle, [0.0, 1.0])
    assert (strip.c_lo, strip.c_hi) == (0.0, 1.0)
    assert strip.witnesses[0][1] == 0.0
    np.testing.assert_array_equal(strip.witnesses[1], [0.0, 1.0])
    assert strip.lower.signed_distance([3.0, 0.0]) == 0.0
    assert strip.upper.signed_distance([3.0, 1.0]) == 0.0

    n = Direction(0.7).normal
    strip = supporting_strip(hexagon, n)
    assert strip.width == pytest.approx(width(hexagon, n))
    np.testing.assert_allclose(strip.witnesses @ n, [strip.c_lo, strip.c_hi])


def test_parallelogram_orientation():
    with pytest.raises(InvalidGeometry):
        Parallelogram([0, 0], [0, 1], [1, 0])
    p = Parallelogram.from_oriented([0, 0], [0, 1], [1, 0])
    assert p.area == pytest.approx(1.0)


def test_singular_affine_map_rejected():
    with pytest.raises(InvalidGeometry):
        AffineMap(np.array([[1.0, 2.0], [2.0, 4.0]]), np.zeros(2))


# ============ Support and width ============

def test_support_of_unit_square(unit_square):
    value, witness = support(unit_square, [1.0, 0.0])
    assert value == 1.0
    assert witness[0] == 1.0
    value, witness = support(unit_square, [0.0, -1.0])
    assert value == 0.0
    assert witness[1] == 0.0


def test_support_of_hexagon():
    hexagon = ConvexPolygon.regular(6)
    value, witness = support(hexagon, [1.0, 0.0])
    assert value == pytest.approx(1.0)
    np.testing.assert_allclose(witness, [1.0, 0.0], atol=1e-12)


def test_support_is_translation_additive(rng):
    poly = random_convex_polygon(15, rng)
    for _ in range(20):
        n = rng.normal(size=2)
        n /= np.hypot(*n)
        t = rng.uniform(-5, 5, size=2)
        assert support(poly.translated(t), n)[0] == pytest.approx(support(poly, n)[0] + n @ t, abs=1e-12)


def test_width(unit_square, disk):
    assert width(unit_square, [0.0, 1.0]) == pytest.approx(1.0)
    assert width(unit_square, np.array([1.0, 1.0]) / math.sqrt(2)) == pytest.approx(math.sqrt(2))
    for theta in np.linspace(0, math.pi, 17):
        assert width(disk, [math.cos(theta), math.sin(theta)]) == pytest.approx(1.0, abs=1e-3)


# ============ Normalization and chords ============

def test_normalize_square_of_side_two():
    square = ConvexPolygon([[0, 0], [2, 0], [2, 2], [0, 2]])
    norm, affine = normalize_to_unit_slab(square, Direction(0.0))
    assert affine.det == pytest.approx(0.25)
    assert _as_set(norm.vertices) == {(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)}


def test_normalize_round_trip(rng):
    poly = random_convex_polygon(25, rng)
    for theta in np.linspace(0, math.pi, 7, endpoint=False):
        norm, affine = normalize_to_unit_slab(poly, Direction(theta))
        ys = norm.vertices[:, 1]
        assert ys.min() == 0.0 and ys.max() == 1.0
        assert norm.vertices[:, 0].min() == pytest.approx(0.0, abs=1e-12)
        back = affine.inverse().apply(norm.vertices)
        assert _as_set(back, 9) == _as_set(poly.vertices, 9)


def test_chord_at_height(triangle, disk, unit_square):
    left, right = chord_at_height(triangle, 0.25)
    assert (left, right) == pytest.approx((0.0, 0.75))

    norm, _ = normalize_to_unit_slab(disk, Direction(0.0))
    left, right = chord_at_height(norm, 0.5)
    assert right - left == pytest.approx(1.0, abs=2e-4)

    assert chord_at_height(unit_square, 0.5) == pytest.approx((0.0, 1.0))
    assert chord_at_height(unit_square, 1.5) is None


def test_chord_profile_is_unimodal(rng):
    for _ in range(10):
        poly = random_convex_polygon(int(rng.integers(5, 40)), rng)
        norm, _ = normalize_to_unit_slab(poly, Direction(float(rng.uniform(0, math.pi))))
        hs = np.linspace(0.0, 1.0, 2001)
        lengths = np.array([np.subtract(*chord_at_height(norm, h)[::-1]) for h in hs])
        peak = int(np.argmax(lengths))
        assert np.all(np.diff(lengths[: peak + 1]) >= -1e-9)
        assert np.all(np.diff(lengths[peak:]) <= 1e-9)


# ============ Difference body and containment ============

def test_difference_body_examples(unit_square, triangle):
    assert _as_set(difference_body(unit_square).vertices) == {(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)}
    assert _as_set(difference_body(triangle).vertices) == {
        (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, -1.0), (-1.0, 1.0)
    }


def test_difference_body_is_centrally_symmetric(rng):
    poly = random_convex_polygon(30, rng)
    diff = difference_body(poly)
    assert _as_set(diff.vertices) == _as_set(-diff.vertices)


def test_translates_intersect_agrees_with_shapely(rng):
    body = random_convex_polygon(12, rng)
    checked = 0
    for _ in range(1000):
        x, y = rng.uniform(-1.5, 1.5, size=(2, 2))
        # Skip near-tangent pairs; the two predicates use different tolerances there
        if abs(signed_distance(body.difference_body, x - y)[0]) < 1e-7:
            continue
        a = ShapelyPolygon(body.vertices + x)
        b = ShapelyPolygon(body.vertices + y)
        assert translates_intersect(body, x, y) == a.intersects(b)
        checked += 1
    assert checked > 900


def test_signed_distance_matches_shapely_outside(rng):
    poly = random_convex_polygon(20, rng)
    shape = ShapelyPolygon(poly.vertices)
    points = rng.uniform(-2, 2, size=(300, 2))
    dist = signed_distance(poly, points)
    for p, d in zip(points, dist):
        if d > 0:
            assert d == pytest.approx(shape.exterior.distance(ShapelyPoint(p)), abs=1e-12)
        else:
            assert shape.buffer(1e-9).contains(ShapelyPoint(p))


def test_contains_point(unit_square):
    assert contains_point(unit_square, [0.5, 0.5], tol=0.0)
    assert not contains_point(unit_square, [1 + 1e-6, 0.5], tol=1e-9)
    assert contains_point(unit_square, [1.0, 1.0], tol=1e-9)
    assert not contains_point(unit_square, [1.0, 0.5], tol=-1e-9)


def test_contains_polygon(unit_square):
    big = ConvexPolygon([[-0.5, -0.5], [1.5, -0.5], [1.5, 1.5], [-0.5, 1.5]])
    assert contains_polygon(big, unit_square)
    assert not contains_polygon(unit_square, big)


def test_line_distance_to_polygon(unit_square):
    assert line_distance_to_polygon(Line(np.array([0.0, 1.0]), 0.5), unit_square) == 0.0
    assert line_distance_to_polygon(Line(np.array([0.0, 1.0]), 3.0), unit_square) == pytest.approx(2.0)
