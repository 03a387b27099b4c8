"""JSON documents: instances, approximation results, certificates and run reports."""

import hashlib
import json
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from pierce4 import __version__
from pierce4.approx import ApproxResult
from pierce4.geometry import ConvexPolygon, Line, Parallelogram
from pierce4.piercing import Branch, PiercingCertificate
from pierce4.transversal import Instance

SCHEMA_VERSION = "1"

Pair = Tuple[float, float]


# ============ Geometry ============

class PolygonModel(BaseModel):
    """Vertex list of a convex polygon; clockwise input is reversed on load."""
    vertices: List[Pair] = Field(..., min_length=3)

    def to_polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.vertices)

    @classmethod
    def from_polygon(cls, poly: ConvexPolygon) -> "PolygonModel":
        return cls(vertices=[tuple(v) for v in poly.to_list()])


class ParallelogramModel(BaseModel):
    anchor: Pair
    e1: Pair
    e2: Pair

    @classmethod
    def from_parallelogram(cls, p: Parallelogram) -> "ParallelogramModel":
        return cls(**p.to_dict())

    def to_parallelogram(self) -> Parallelogram:
        return Parallelogram(self.anchor, self.e1, self.e2)


class LineModel(BaseModel):
    """{x : normal . x = offset}; direction_deg is informational."""
    normal: Pair
    offset: float
    direction_deg: float

    @classmethod
    def from_line(cls, line: Line) -> "LineModel":
        return cls(**line.to_dict())

    def to_line(self) -> Line:
        return Line(np.asarray(self.normal), self.offset)


# ============ Instances and results ============

class InstanceModel(BaseModel):
    schema_version: str = SCHEMA_VERSION
    body: PolygonModel
    families: List[List[Pair]]
    seed: Optional[int] = None

    @classmethod
    def from_instance(cls, inst: Instance) -> "InstanceModel":
        return cls(
            body=PolygonModel.from_polygon(inst.body),
            families=[[tuple(x) for x in fam.tolist()] for fam in inst.families],
            seed=inst.seed,
        )

    def to_instance(self) -> Instance:
        return Instance(self.body.to_polygon(), [np.asarray(f, dtype=float).reshape(-1, 2) for f in self.families], self.seed)


class ApproxResultModel(BaseModel):
    P: ParallelogramModel
    P_circ: ParallelogramModel
    Q: ParallelogramModel
    u_deg: float
    v_deg: float
    alpha: float
    ratio: float
    residual: float
    shaved: bool
    iterations: int
    eps_used: float
    grid_fallback: bool
    touch_points: Optional[List[Pair]] = None

    @classmethod
    def from_result(cls, result: ApproxResult) -> "ApproxResultModel":
        return cls.model_validate(result.to_dict())


class CertificateModel(BaseModel):
    """Certificate; `approx` is carried for inspection and never needed to verify."""
    schema_version: str = SCHEMA_VERSION
    branch: Branch
    excluded_family: int
    points: List[Pair]
    ell: Optional[LineModel] = None
    ell_prime: Optional[LineModel] = None
    assignment: List[Tuple[int, int, int]] = Field(default_factory=list)
    approx: Optional[ApproxResultModel] = None

    @classmethod
    def from_certificate(cls, cert: PiercingCertificate) -> "CertificateModel":
        return cls.model_validate(cert.to_dict())

    def to_certificate(self) -> PiercingCertificate:
        return PiercingCertificate(
            branch=self.branch,
            excluded_family=self.excluded_family,
            points=np.asarray(self.points, dtype=float).reshape(-1, 2),
            ell=self.ell.to_line() if self.ell else None,
            ell_prime=self.ell_prime.to_line() if self.ell_prime else None,
            assignment={(i, k): p for i, k, p in self.assignment},
        )


class RunReport(BaseModel):
    """Envelope written by every command except gen."""
    schema_version: str = SCHEMA_VERSION
    tool_version: str = __version__
    command: List[str]
    input_digest: Optional[str] = None
    passed: bool
    result: Dict[str, Any] = Field(default_factory=dict)
    verification: Optional[Dict[str, Any]] = None
    timing_s: float = 0.0
    tolerances: Dict[str, Any] = Field(default_factory=dict)


def digest(document: Any) -> str:
    """SHA-256 of the canonical JSON form of a document."""
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
