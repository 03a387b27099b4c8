"""Shared bodies, corpora and seeded generators."""

import math

import numpy as np
import pytest

from pierce4.geometry import ConvexPolygon
from pierce4.oracles.generator import BodySpec, corpus_bodies, gen_body


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def unit_square():
    return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def triangle():
    return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@pytest.fixture
def disk():
    return gen_body(BodySpec(name="disk256"))


@pytest.fixture
def hexagon():
    return ConvexPolygon.regular(6, phase=math.pi / 6)


@pytest.fixture(scope="session")
def corpus():
    """(label, body) for every acceptance body."""
    return [(spec.label, gen_body(spec)) for spec in corpus_bodies()]
