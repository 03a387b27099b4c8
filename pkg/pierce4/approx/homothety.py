"""Fixed-direction parallelogram approximation of a convex body.

For a body K and a direction u this module finds a parallelogram P inside K
with a side parallel to u, and a translate Q of 2P containing K. The search
runs in the frame where u is horizontal and K spans the slab 0 <= y <= 1:

- every chord length l in (0, m) is attained at two heights h1 < h2, which
  fixes the inscribed parallelogram ABCD with horizontal sides of length l;
- the circumscribed parallelogram A'B'C'D' has sides parallel to ABCD;
- bisection on l drives AB/BC - A'B'/B'C' to zero, where the two are
  homothetic and the homothety ratio is at most 2.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from pierce4.approx.profile import ChordProfile, build_chord_profile, eps_shave, needs_shave
from pierce4.config import ApproxConfig
from pierce4.errors import DegenerateDirection, InvalidChord, NoRootFound
from pierce4.geometry import (
    ConvexPolygon,
    Direction,
    Parallelogram,
    Strip,
    normalize_to_unit_slab,
    supporting_strip,
    width,
)
from pierce4.geometry.polygon import chord_bounds, containment_slack

logger = logging.getLogger(__name__)

LOW_FRACTION = 1e-4
MAX_HALVINGS = 64


# ============ Parallelograms in the normalized frame ============

def inscribed_parallelogram(profile: ChordProfile, l: float) -> Parallelogram:
    """ABCD with AB, CD the full horizontal chords of length l."""
    h1, h2 = profile.solve(l)
    if not h2 > h1:
        raise InvalidChord(
            "chords of this length do not span a parallelogram",
            {"l": l, "h1": h1, "h2": h2},
        )
    left, _ = chord_bounds(profile.poly.vertices, [h1, h2])
    a = np.array([left[0], h1])
    d = np.array([left[1], h2])
    return Parallelogram(a, np.array([l, 0.0]), d - a)


def supporting_strips(poly: ConvexPolygon, v: Direction) -> Tuple[Strip, Strip]:
    """Horizontal supporting slab and the supporting slab along v, with touching vertices."""
    if math.sin(v.theta) < 1e-9:
        raise DegenerateDirection("side direction is horizontal", {"v_deg": v.degrees})
    return supporting_strip(poly, [0.0, 1.0]), supporting_strip(poly, v.normal)


def _strip_parallelogram(horizontal: Strip, slanted: Strip) -> Parallelogram:
    # The slanted normal points left, so its upper line is the left side
    bottom_left = horizontal.lower.intersection(slanted.upper)
    return Parallelogram(
        bottom_left,
        horizontal.lower.intersection(slanted.lower) - bottom_left,
        horizontal.upper.intersection(slanted.upper) - bottom_left,
    )


def circumscribed_parallelogram(poly: ConvexPolygon, v: Direction) -> Parallelogram:
    """Horizontal supporting slab intersected with the supporting slab along v."""
    return _strip_parallelogram(*supporting_strips(poly, v))


def _side_ratio(p: Parallelogram) -> float:
    ab, bc = p.side_lengths
    return ab / bc


def homothety_gap(profile: ChordProfile, poly: ConvexPolygon, l: float) -> float:
    """g(l) = AB/BC - A'B'/B'C' for the inscribed/circumscribed pair at l."""
    inner = inscribed_parallelogram(profile, l)
    outer = circumscribed_parallelogram(poly, Direction.from_vector(inner.e2))
    return _side_ratio(inner) - _side_ratio(outer)


# ============ Result types ============

@dataclass
class ApproxResult:
    """Inscribed P, circumscribed P' and Q = 2P + t, all in the body's own frame."""

    P: Parallelogram
    P_circ: Parallelogram
    Q: Parallelogram
    u: Direction
    v: Direction
    alpha: float
    ratio: float
    residual: float
    shaved: bool
    iterations: int = 0
    eps_used: float = 0.0
    grid_fallback: bool = False
    touch_points: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            "P": self.P.to_dict(),
            "P_circ": self.P_circ.to_dict(),
            "Q": self.Q.to_dict(),
            "u_deg": self.u.degrees,
            "v_deg": self.v.degrees,
            "alpha": self.alpha,
            "ratio": self.ratio,
            "residual": self.residual,
            "shaved": self.shaved,
            "iterations": self.iterations,
            "eps_used": self.eps_used,
            "grid_fallback": self.grid_fallback,
            "touch_points": None if self.touch_points is None else self.touch_points.tolist(),
        }


@dataclass
class CheckResult:
    """One line of a verification report."""

    name: str
    passed: bool
    measured: float
    limit: float


@dataclass
class ApproxReport:
    """Outcome of verify_approx."""

    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "measured": c.measured, "limit": c.limit}
                for c in self.checks
            ],
        }


# ============ Root search ============

@dataclass
class _Root:
    l: float
    inner: Parallelogram
    gap: float
    iterations: int
    grid_fallback: bool


def _bisect(gap, lo: float, hi: float, g_lo: float, cfg: ApproxConfig) -> Tuple[float, float, int]:
    """Bisection on a bracket with g(lo) < 0 <= g(hi)."""
    best_l, best_g = lo, g_lo
    iterations = 0
    for iterations in range(1, cfg.max_iter + 1):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        g_mid = gap(mid)
        if abs(g_mid) < abs(best_g):
            best_l, best_g = mid, g_mid
        if abs(g_mid) <= cfg.root_tol:
            break
        if g_mid < 0:
            lo = mid
        else:
            hi = mid
    logger.debug(f"Bisection stopped after {iterations} steps at l={best_l!r}, g={best_g:.3e}")
    return best_l, best_g, iterations


def _find_root(profile: ChordProfile, cfg: ApproxConfig) -> _Root:
    poly = profile.poly
    m = profile.m

    def gap(l: float) -> float:
        return homothety_gap(profile, poly, l)

    l_lo = m * LOW_FRACTION
    g_lo = gap(l_lo)
    for _ in range(MAX_HALVINGS):
        if g_lo < 0:
            break
        l_lo *= 0.5
        g_lo = gap(l_lo)
    else:
        raise NoRootFound("homothety gap is not negative for short chords", {"l_lo": l_lo, "g_lo": g_lo})

    # Without a plateau BC collapses at l = m and the gap tends to +inf
    g_hi = gap(m) if profile.has_plateau else math.inf
    if abs(g_hi) <= cfg.root_tol:
        return _Root(m, inscribed_parallelogram(profile, m), g_hi, 0, False)

    if g_hi > 0:
        l, g, iterations = _bisect(gap, l_lo, m, g_lo, cfg)
        return _Root(l, inscribed_parallelogram(profile, l), g, iterations, False)

    logger.warning(f"No sign change of the homothety gap on [{l_lo:.3e}, {m:.6f}]; scanning a grid")
    samples = np.linspace(m / cfg.grid_samples, m, cfg.grid_samples)
    gaps = np.array([gap(float(l)) for l in samples])
    flips = np.flatnonzero((gaps[:-1] < 0) & (gaps[1:] >= 0))
    if len(flips):
        i = int(flips[0])
        l, g, iterations = _bisect(gap, float(samples[i]), float(samples[i + 1]), float(gaps[i]), cfg)
    else:
        i = int(np.argmin(np.abs(gaps)))
        l, g, iterations = float(samples[i]), float(gaps[i]), 0
    return _Root(l, inscribed_parallelogram(profile, l), g, iterations, True)


def _plateau_candidate(poly: ConvexPolygon, cfg: ApproxConfig) -> Optional[Parallelogram]:
    """Maximal-chord parallelogram of an unshaved body, if already homothetic."""
    heights = np.unique(poly.vertices[:, 1])
    left, right = chord_bounds(poly.vertices, heights)
    lengths = right - left
    m = float(lengths.max())
    top = np.flatnonzero(lengths >= m - 1e-12)
    ia, ib = int(top[0]), int(top[-1])
    if ib == ia:
        return None
    a = np.array([left[ia], heights[ia]])
    d = np.array([left[ib], heights[ib]])
    inner = Parallelogram(a, np.array([m, 0.0]), d - a)
    outer = circumscribed_parallelogram(poly, Direction.from_vector(inner.e2))
    if abs(_side_ratio(inner) - _side_ratio(outer)) > cfg.root_tol:
        return None
    return inner


@dataclass
class _Assembly:
    inner: Parallelogram
    outer: Parallelogram
    Q: Parallelogram
    ratio: float
    residual: float
    k_in_q_slack: float
    touch_points: np.ndarray


def _assemble(body: ConvexPolygon, inner: Parallelogram) -> _Assembly:
    """Circumscribe the ORIGINAL normalized body and center Q = 2P on it."""
    horizontal, slanted = supporting_strips(body, Direction.from_vector(inner.e2))
    outer = _strip_parallelogram(horizontal, slanted)
    ab, bc = inner.side_lengths
    ab_c, bc_c = outer.side_lengths
    ratio = max(ab_c / ab, bc_c / bc)
    residual = abs(ab_c / ab - bc_c / bc)
    e1, e2 = 2.0 * inner.e1, 2.0 * inner.e2
    q = Parallelogram(outer.center - 0.5 * (e1 + e2), e1, e2)
    slack = containment_slack(q.to_polygon(), body.vertices)
    touch = np.vstack([horizontal.witnesses, slanted.witnesses])
    return _Assembly(inner, outer, q, ratio, residual, slack, touch)


def find_homothetic_pair(poly: ConvexPolygon, u: Direction, cfg: Optional[ApproxConfig] = None) -> ApproxResult:
    """Inscribed P with a side along u and a translate Q of 2P containing the body."""
    cfg = cfg or ApproxConfig()
    body, frame = normalize_to_unit_slab(poly, u)

    shaved = needs_shave(body)
    eps = cfg.eps_shave if shaved else 0.0
    root: Optional[_Root] = None
    assembly: Optional[_Assembly] = None

    if shaved:
        plateau = _plateau_candidate(body, cfg)
        if plateau is not None:
            logger.debug("Maximal-chord parallelogram is already homothetic; no shave needed")
            shaved, eps = False, 0.0
            root = _Root(plateau.e1[0], plateau, 0.0, 0, False)
            assembly = _assemble(body, plateau)

    while assembly is None:
        working = eps_shave(body, eps) if shaved else body
        root = _find_root(build_chord_profile(working), cfg)
        candidate = _assemble(body, root.inner)
        ok = (
            candidate.k_in_q_slack <= cfg.contain_tol
            and candidate.residual <= cfg.residual_tol
            and candidate.ratio <= 2.0 + cfg.ratio_slack
        )
        if ok or not shaved:
            assembly = candidate
            break
        next_eps = eps * cfg.eps_shave_factor
        if next_eps < cfg.eps_shave_floor:
            assembly = candidate
            break
        logger.warning(
            f"Shave eps={eps:g} leaves ratio={candidate.ratio:.6f}, residual={candidate.residual:.2e}, "
            f"K-in-Q slack={candidate.k_in_q_slack:.2e}; retrying with eps={next_eps:g}"
        )
        eps = next_eps

    diagnostics = {
        "direction_deg": u.degrees,
        "ratio": assembly.ratio,
        "residual": assembly.residual,
        "gap": root.gap,
        "k_in_q_slack": assembly.k_in_q_slack,
        "eps": eps,
        "grid_fallback": root.grid_fallback,
    }
    if assembly.ratio > 2.0 + cfg.ratio_slack:
        raise NoRootFound("homothety ratio exceeds 2 + slack", diagnostics)
    if assembly.k_in_q_slack > cfg.contain_tol:
        raise NoRootFound("body is not contained in the doubled parallelogram", diagnostics)
    if assembly.residual > cfg.residual_tol:
        raise NoRootFound("homothety residual above tolerance", diagnostics)

    back = frame.inverse()
    P = assembly.inner.transformed(back)
    P_circ = assembly.outer.transformed(back)
    Q = Parallelogram(back.apply(assembly.Q.anchor), 2.0 * P.e1, 2.0 * P.e2)
    e2 = assembly.inner.e2
    result = ApproxResult(
        P=P,
        P_circ=P_circ,
        Q=Q,
        u=u,
        v=Direction.from_vector(P.e2),
        alpha=math.atan2(e2[1], e2[0]),
        ratio=assembly.ratio,
        residual=assembly.residual,
        shaved=shaved,
        iterations=root.iterations,
        eps_used=eps,
        grid_fallback=root.grid_fallback,
        touch_points=back.apply(assembly.touch_points),
    )
    logger.debug(
        f"u={u.degrees:.3f} deg: ratio={result.ratio:.6f}, residual={result.residual:.2e}, "
        f"shaved={shaved}, iterations={result.iterations}"
    )
    return result


# ============ Verification ============

def verify_approx(poly: ConvexPolygon, result: ApproxResult, tol: float = 1e-9, ratio_slack: float = 1e-3, residual_tol: float = 1e-6) -> ApproxReport:
    """Independent re-check of P in K, K in Q, Q = 2P + t, residual and ratio."""
    scale = width(poly, result.u.normal)
    abs_tol = tol * scale
    p_in_k = containment_slack(poly, result.P.vertices)
    k_in_q = containment_slack(result.Q.to_polygon(), poly.vertices)
    doubled = float(max(np.max(np.abs(result.Q.e1 - 2.0 * result.P.e1)), np.max(np.abs(result.Q.e2 - 2.0 * result.P.e2))))

    report = ApproxReport()
    report.checks.append(CheckResult("P_in_K", p_in_k <= abs_tol, p_in_k / scale, tol))
    report.checks.append(CheckResult("K_in_Q", k_in_q <= abs_tol, k_in_q / scale, tol))
    report.checks.append(CheckResult("Q_is_2P", doubled == 0.0, doubled, 0.0))
    report.checks.append(CheckResult("residual", result.residual <= residual_tol, result.residual, residual_tol))
    report.checks.append(CheckResult("ratio", result.ratio <= 2.0 + ratio_slack, result.ratio, 2.0 + ratio_slack))
    return report
