"""End-to-end piercing: transversal branch with a four-point cover, brute-force fallback."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from pierce4.approx import ApproxResult, find_homothetic_pair
from pierce4.config import PierceConfig
from pierce4.errors import (
    DegenerateBody,
    DegenerateDirection,
    DegenerateLines,
    DegenerateSupport,
    InvalidChord,
    NoRootFound,
    PipelineFailure,
    RatioExceeded,
    TooLarge,
)
from pierce4.geometry import Line, contains_point, contains_points, line_distance_to_polygon
from pierce4.oracles.brute import brute_force_piercing
from pierce4.piercing.cover import four_cover, lift_to_line, region_R
from pierce4.piercing.intervals import colorful_interval_pierce
from pierce4.transversal import Instance, find_transversal, project_to_intervals

logger = logging.getLogger(__name__)

Assignment = Dict[Tuple[int, int], int]

# Failures of the transversal branch that route to the fallback instead of aborting
BRANCH_ERRORS = (
    NoRootFound,
    DegenerateBody,
    DegenerateDirection,
    DegenerateLines,
    DegenerateSupport,
    InvalidChord,
    RatioExceeded,
)


class Branch(str, Enum):
    TRANSVERSAL_FOUR_POINTS = "TransversalFourPoints"
    FALLBACK_BRUTE_FORCE = "FallbackBruteForce"


MAX_POINTS = {
    Branch.TRANSVERSAL_FOUR_POINTS: 4,
    Branch.FALLBACK_BRUTE_FORCE: 3,
}


@dataclass
class PiercingCertificate:
    """Points piercing every translate outside the excluded family, with the witness per translate."""

    branch: Branch
    excluded_family: int
    points: np.ndarray
    ell: Optional[Line] = None
    ell_prime: Optional[Line] = None
    approx: Optional[ApproxResult] = None
    assignment: Assignment = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "branch": self.branch.value,
            "excluded_family": self.excluded_family,
            "points": np.asarray(self.points).tolist(),
            "ell": self.ell.to_dict() if self.ell else None,
            "ell_prime": self.ell_prime.to_dict() if self.ell_prime else None,
            "assignment": [[i, k, p] for (i, k), p in sorted(self.assignment.items())],
            "approx": self.approx.to_dict() if self.approx else None,
        }


@dataclass
class CertificateReport:
    """Outcome of verify_certificate; passed when there are no violations."""

    checked: int = 0
    violations: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "violations": self.violations}


# ============ Assignment ============

def assign_points(inst: Instance, points: np.ndarray, excluded: int, tol: float) -> Tuple[Assignment, List[Tuple[int, int]]]:
    """First containing point for each translate outside the excluded family, plus the uncovered ones."""
    assignment: Assignment = {}
    missing: List[Tuple[int, int]] = []
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    for i, k, x in inst.translates():
        if i == excluded:
            continue
        hits = np.flatnonzero(contains_points(inst.body, points - x, tol)) if len(points) else []
        if len(hits):
            assignment[(i, k)] = int(hits[0])
        else:
            missing.append((i, k))
    return assignment, missing


def prune_points(points: np.ndarray, assignment: Assignment) -> Tuple[np.ndarray, Assignment]:
    """Drop points that pierce no translate and renumber the assignment."""
    used = sorted(set(assignment.values()))
    remap = {old: new for new, old in enumerate(used)}
    kept = np.asarray(points, dtype=float).reshape(-1, 2)[used]
    return kept, {key: remap[p] for key, p in assignment.items()}


# ============ Branches ============

def _transversal_branch(inst: Instance, cfg: PierceConfig) -> Optional[PiercingCertificate]:
    found = find_transversal(inst, cfg.transversal)
    if found is None:
        logger.info("No line transversal found; switching to the brute-force fallback")
        return None
    u, ell = found

    approx = find_homothetic_pair(inst.body, u, cfg.approx)
    axis = approx.v.normal
    j, t = colorful_interval_pierce(project_to_intervals(inst, axis))
    ell_prime = lift_to_line(t, axis)

    for i, k, _ in inst.translates():
        if i != j and line_distance_to_polygon(ell_prime, inst.translate(i, k)) > cfg.contain_tol:
            logger.warning(f"Lifted line misses translate ({i}, {k}) outside family {j}")

    region = region_R(approx.Q, ell, ell_prime)
    points = np.array(four_cover(region, approx.P))
    assignment, missing = assign_points(inst, points, j, cfg.contain_tol)
    if missing:
        logger.error(f"Four-point cover leaves {len(missing)} translates unpierced, e.g. {missing[:3]}")
        return None

    points, assignment = prune_points(points, assignment)
    logger.info(
        f"Transversal branch: u={u.degrees:.3f} deg, ratio={approx.ratio:.4f}, "
        f"excluded family {j}, {len(points)} points"
    )
    return PiercingCertificate(
        branch=Branch.TRANSVERSAL_FOUR_POINTS,
        excluded_family=j,
        points=points,
        ell=ell,
        ell_prime=ell_prime,
        approx=approx,
        assignment=assignment,
    )


def _fallback_branch(inst: Instance, cfg: PierceConfig) -> Optional[PiercingCertificate]:
    for j in range(inst.n):
        polys = [inst.translate(i, k) for i, k, _ in inst.translates() if i != j]
        try:
            found = brute_force_piercing(
                polys, cfg.brute_force_k, max_polys=cfg.max_brute_force_polys, tol=cfg.contain_tol
            )
        except TooLarge as e:
            logger.warning(f"Fallback skips family {j}: {e.message} ({e.details})")
            continue
        if found is None:
            continue
        _, points = found
        assignment, missing = assign_points(inst, points, j, cfg.contain_tol)
        if missing:
            logger.error(f"Brute-force witness for family {j} misses {missing[:3]}")
            continue
        points, assignment = prune_points(points, assignment)
        logger.info(f"Fallback branch: excluded family {j}, {len(points)} points")
        return PiercingCertificate(
            branch=Branch.FALLBACK_BRUTE_FORCE,
            excluded_family=j,
            points=points,
            assignment=assignment,
        )
    return None


def pierce(inst: Instance, cfg: Optional[PierceConfig] = None) -> PiercingCertificate:
    """Certificate with at most 4 points piercing all translates outside one family."""
    cfg = cfg or PierceConfig()
    inst.validate(cfg.contain_tol)

    try:
        cert = _transversal_branch(inst, cfg)
    except BRANCH_ERRORS as e:
        logger.warning(f"Transversal branch failed with {type(e).__name__}: {e.message}")
        cert = None

    if cert is None:
        cert = _fallback_branch(inst, cfg)
    if cert is None:
        raise PipelineFailure("both piercing branches failed", {"instance": inst.to_dict()})

    report = verify_certificate(inst, cert, cfg.contain_tol)
    if not report.passed:
        raise PipelineFailure(
            "certificate failed verification",
            {"instance": inst.to_dict(), "violations": report.violations[:10]},
        )
    return cert


# ============ Verification ============

def verify_certificate(inst: Instance, cert: PiercingCertificate, tol: float = 1e-9) -> CertificateReport:
    """Re-check the certificate from the instance alone; only point-in-polygon tests."""
    report = CertificateReport()
    points = np.asarray(cert.points, dtype=float).reshape(-1, 2)

    limit = MAX_POINTS[Branch(cert.branch)]
    if len(points) > limit:
        report.violations.append({"kind": "too_many_points", "count": len(points), "limit": limit})
    if not 0 <= cert.excluded_family < inst.n:
        report.violations.append({"kind": "bad_excluded_family", "excluded_family": cert.excluded_family})
    if not np.all(np.isfinite(points)):
        report.violations.append({"kind": "non_finite_point"})
        return report

    for i, k, x in inst.translates():
        if i == cert.excluded_family:
            continue
        report.checked += 1
        index = cert.assignment.get((i, k))
        if index is None or not 0 <= index < len(points):
            report.violations.append({"kind": "unassigned", "family": i, "member": k, "point": index})
        elif not contains_point(inst.body, points[index] - x, tol):
            report.violations.append({"kind": "not_contained", "family": i, "member": k, "point": index})
    return report
