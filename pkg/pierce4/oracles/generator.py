"""Seeded bodies and instances that satisfy the cross-intersection hypothesis."""

import logging
import math
import re
from typing import Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from pierce4.errors import InvalidGeometry, RejectionBudgetExceeded
from pierce4.geometry import ConvexPolygon, contains_points
from pierce4.geometry.polygon import signed_distance
from pierce4.transversal.instance import Instance

logger = logging.getLogger(__name__)

STRICT_MARGIN = 1e-6
NAMED_BODIES = ("square", "triangle", "disk256", "ellipse256", "reuleaux192")


class BodySpec(BaseModel):
    """Named shape, regular k-gon, random polygon or explicit vertices."""

    name: str = "square"
    k: Optional[int] = Field(None, ge=3, le=64)
    axis_ratio: float = Field(2.0, gt=0)
    seed: int = 0
    n_vertices: int = Field(20, ge=3)
    vertices: Optional[List[Tuple[float, float]]] = None

    @field_validator("name")
    @classmethod
    def _known_name(cls, value: str) -> str:
        if value not in NAMED_BODIES + ("regular", "random", "vertices"):
            raise ValueError(f"unknown body {value!r}")
        return value

    @property
    def label(self) -> str:
        if self.name == "regular":
            return f"gon{self.k}"
        if self.name == "random":
            return f"random{self.n_vertices}-s{self.seed}"
        return self.name


def parse_body(text: str) -> BodySpec:
    """CLI body names: square, triangle, disk256, ellipse256[:ratio], reuleaux192, gon<k>, random:<seed>[:<n>]."""
    if text in ("square", "triangle", "disk256", "reuleaux192"):
        return BodySpec(name=text)
    match = re.fullmatch(r"ellipse256(?::([0-9.]+))?", text)
    if match:
        return BodySpec(name="ellipse256", axis_ratio=float(match.group(1) or 2.0))
    match = re.fullmatch(r"gon(\d+)", text)
    if match:
        return BodySpec(name="regular", k=int(match.group(1)))
    match = re.fullmatch(r"random:(\d+)(?::(\d+))?", text)
    if match:
        return BodySpec(name="random", seed=int(match.group(1)), n_vertices=int(match.group(2) or 20))
    raise InvalidGeometry(f"unknown body name {text!r}")


def _circle_points(k: int, rx: float, ry: float) -> np.ndarray:
    angles = 2 * math.pi * np.arange(k) / k
    return np.column_stack([rx * np.cos(angles), ry * np.sin(angles)])


def _reuleaux(samples_per_arc: int = 64) -> np.ndarray:
    """Reuleaux triangle of width 1; each arc is centered at the opposite corner."""
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    points = []
    for i in range(3):
        center = corners[i]
        start = corners[(i + 1) % 3] - center
        a0 = math.atan2(start[1], start[0])
        for s in range(samples_per_arc):
            a = a0 + (math.pi / 3) * s / samples_per_arc
            points.append(center + np.array([math.cos(a), math.sin(a)]))
    return np.array(points)


def random_convex_polygon(n: int, rng: np.random.Generator) -> ConvexPolygon:
    """Convex position sampling: sorted coordinate chains, combined and sorted by angle."""
    xs, ys = np.sort(rng.random(n)), np.sort(rng.random(n))

    def chain(values: np.ndarray) -> np.ndarray:
        lo, hi = values[0], values[-1]
        top, bottom = [], []
        last_top = last_bottom = lo
        for v in values[1:-1]:
            if rng.random() < 0.5:
                top.append(v - last_top)
                last_top = v
            else:
                bottom.append(last_bottom - v)
                last_bottom = v
        top.append(hi - last_top)
        bottom.append(last_bottom - hi)
        return np.array(top + bottom)

    dx, dy = chain(xs), chain(ys)
    rng.shuffle(dy)
    steps = np.column_stack([dx, dy])
    steps = steps[np.argsort(np.arctan2(steps[:, 1], steps[:, 0]))]
    points = np.cumsum(steps, axis=0)
    points -= points.mean(axis=0)
    return ConvexPolygon.hull(points)


def gen_body(spec: BodySpec) -> ConvexPolygon:
    """Build a body from its spec; deterministic for random shapes."""
    if spec.name == "square":
        return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    if spec.name == "triangle":
        return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    if spec.name == "regular":
        k = spec.k or 6
        return ConvexPolygon.regular(k, phase=-math.pi / 2 - math.pi / k)
    if spec.name == "disk256":
        return ConvexPolygon(_circle_points(256, 0.5, 0.5))
    if spec.name == "ellipse256":
        return ConvexPolygon(_circle_points(256, 0.5 * spec.axis_ratio, 0.5))
    if spec.name == "reuleaux192":
        return ConvexPolygon(_reuleaux())
    if spec.name == "random":
        return random_convex_polygon(spec.n_vertices, np.random.default_rng(spec.seed))
    if spec.vertices is None:
        raise InvalidGeometry("body spec 'vertices' needs a vertex list")
    return ConvexPolygon(spec.vertices)


def corpus_bodies() -> List[BodySpec]:
    """Regular 3..12-gons, square, five random polygons, disk, ellipse and Reuleaux triangle."""
    bodies = [BodySpec(name="regular", k=k) for k in range(3, 13)]
    bodies.append(BodySpec(name="square"))
    bodies.extend(BodySpec(name="random", seed=s, n_vertices=12 + 7 * s) for s in range(5))
    bodies.append(BodySpec(name="disk256"))
    bodies.append(BodySpec(name="ellipse256", axis_ratio=2.0))
    bodies.append(BodySpec(name="reuleaux192"))
    return bodies


# ============ Instances ============

class GenConfig(BaseModel):
    """Parameters of one generated instance."""

    seed: int = 0
    n_families: int = Field(3, ge=2)
    sizes: List[int] = Field(default_factory=lambda: [4])
    spread: float = Field(0.25, ge=0)
    body: BodySpec = Field(default_factory=BodySpec)
    max_rejections: int = Field(10_000, ge=1)
    anchor_margin: float = Field(0.5, gt=0, lt=1)

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, value: List[int]) -> List[int]:
        if not value or any(s < 1 for s in value):
            raise ValueError("family sizes must be >= 1")
        return value

    @model_validator(mode="after")
    def _broadcast_sizes(self) -> "GenConfig":
        if len(self.sizes) == 1:
            self.sizes = self.sizes * self.n_families
        if len(self.sizes) != self.n_families:
            raise ValueError(f"expected {self.n_families} family sizes, got {len(self.sizes)}")
        return self


def _sample_in(poly: ConvexPolygon, rng: np.random.Generator, scale: float) -> np.ndarray:
    """Uniform point of scale * poly by rejection from its bounding box."""
    x0, y0, x1, y1 = poly.bounds()
    while True:
        p = rng.uniform([x0, y0], [x1, y1])
        if contains_points(poly, p[None, :], 0.0)[0]:
            return scale * p


def gen_instance(cfg: GenConfig) -> Instance:
    """Rejection sampling around family anchors, keeping every cross pair intersecting."""
    rng = np.random.default_rng(cfg.seed)
    body = gen_body(cfg.body)
    diff = body.difference_body

    # Anchor differences land in (1 - margin) * diff because diff is symmetric
    half = 0.5 * (1.0 - cfg.anchor_margin)
    anchors = [_sample_in(diff, rng, half) for _ in range(cfg.n_families)]
    families: List[List[np.ndarray]] = [[a] for a in anchors]

    rejections = 0
    pending = [i for size_round in range(1, max(cfg.sizes)) for i in range(cfg.n_families) if size_round < cfg.sizes[i]]
    for i in pending:
        others = np.array([x for j, fam in enumerate(families) if j != i for x in fam])
        while True:
            candidate = anchors[i] + _sample_in(diff, rng, cfg.spread) if cfg.spread > 0 else anchors[i]
            if len(others) == 0 or np.all(signed_distance(diff, candidate - others) <= -STRICT_MARGIN):
                families[i].append(candidate)
                break
            rejections += 1
            if rejections > cfg.max_rejections:
                raise RejectionBudgetExceeded(
                    "instance generator exceeded its rejection budget",
                    {"seed": cfg.seed, "rejections": rejections, "family": i},
                )

    logger.debug(f"Generated instance seed={cfg.seed} body={cfg.body.label} after {rejections} rejections")
    return Instance(body, [np.array(f) for f in families], seed=cfg.seed)


class CorpusConfig(BaseModel):
    """Deterministic corpus of generated instances for benches and probes."""

    bodies: List[BodySpec] = Field(default_factory=corpus_bodies)
    n_values: List[int] = Field(default_factory=lambda: [2, 3, 5])
    max_size: int = Field(8, ge=1)
    spread: float = Field(0.6, ge=0)
    anchor_margin: float = Field(0.9, gt=0, lt=1)
    max_rejections: int = Field(10_000, ge=1)


def corpus_instance_config(corpus: CorpusConfig, seed: int) -> GenConfig:
    """Generator config for one corpus seed; body and n cycle with the seed."""
    rng = np.random.default_rng(seed)
    n = corpus.n_values[(seed // max(len(corpus.bodies), 1)) % len(corpus.n_values)]
    return GenConfig(
        seed=seed,
        n_families=n,
        sizes=[int(s) for s in rng.integers(1, corpus.max_size + 1, size=n)],
        spread=corpus.spread,
        body=corpus.bodies[seed % len(corpus.bodies)],
        max_rejections=corpus.max_rejections,
        anchor_margin=corpus.anchor_margin,
    )


def iter_corpus(corpus: CorpusConfig, seeds: range) -> Iterator[GenConfig]:
    for seed in seeds:
        yield corpus_instance_config(corpus, seed)
