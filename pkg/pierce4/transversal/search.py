"""Line transversals to all translates, found through 1-D projections."""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from pierce4.config import TransversalConfig
from pierce4.geometry import Direction, Line, as_vec2, projection
from pierce4.transversal.instance import Instance, Interval

logger = logging.getLogger(__name__)


def project_to_intervals(inst: Instance, axis_normal) -> List[List[Interval]]:
    """Project every translate onto the axis; family structure is preserved."""
    n = as_vec2(axis_normal)
    base_lo, base_hi = projection(inst.body, n)
    return [
        [Interval(base_lo + float(s), base_hi + float(s)) for s in fam @ n]
        for fam in inst.families
    ]


def common_point(intervals: Sequence[Interval]) -> Optional[float]:
    """max of the lows when it does not exceed the min of the highs."""
    if not intervals:
        return None
    lo = max(iv.lo for iv in intervals)
    hi = min(iv.hi for iv in intervals)
    return lo if lo <= hi else None


def _slack_profile(inst: Instance, thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(min-hi - max-lo, max-lo, min-hi) of the projections for each angle."""
    normals = np.column_stack([-np.sin(thetas), np.cos(thetas)])
    base = inst.body.vertices @ normals.T
    shifts = inst.offsets @ normals.T
    max_lo = base.min(axis=0) + shifts.max(axis=0)
    min_hi = base.max(axis=0) + shifts.min(axis=0)
    return min_hi - max_lo, max_lo, min_hi


def slack(inst: Instance, theta: float) -> float:
    """s(theta); nonnegative exactly when a transversal with that direction exists."""
    return float(_slack_profile(inst, np.array([theta]))[0][0])


def _line_for(inst: Instance, theta: float) -> Optional[Line]:
    direction = Direction(theta)
    s, max_lo, min_hi = (float(a[0]) for a in _slack_profile(inst, np.array([direction.theta])))
    if s < 0:
        return None
    return Line(direction.normal, 0.5 * (max_lo + min_hi))


def transversal_in_direction(inst: Instance, theta: Direction) -> Optional[Line]:
    """Line with direction theta meeting every translate, at the middle of the common range."""
    return _line_for(inst, theta.theta)


def is_transversal(inst: Instance, line: Line, tol: float = 1e-9) -> bool:
    """Exact re-check: the line meets every translate within tol."""
    values = inst.body.vertices @ line.normal
    shifts = inst.offsets @ line.normal - line.offset
    lows = values.min() + shifts
    highs = values.max() + shifts
    return bool(np.all(lows <= tol) and np.all(highs >= -tol))


def find_transversal(inst: Instance, cfg: Optional[TransversalConfig] = None) -> Optional[Tuple[Direction, Line]]:
    """Coarse angular scan of s(theta), then a bounded refinement around its maximum."""
    cfg = cfg or TransversalConfig()
    thetas = math.pi * np.arange(cfg.coarse_samples) / cfg.coarse_samples
    slacks, _, _ = _slack_profile(inst, thetas)

    for i in np.flatnonzero(slacks >= 0):
        line = _line_for(inst, float(thetas[i]))
        if line is not None and is_transversal(inst, line, cfg.contain_tol):
            logger.debug(f"Transversal found on the grid at {math.degrees(thetas[i]):.3f} deg")
            return Direction(float(thetas[i])), line
        logger.warning(f"Grid transversal at {math.degrees(thetas[i]):.3f} deg failed the re-check; continuing")

    if cfg.refine_iters == 0:
        return None
    best = int(np.argmax(slacks))
    step = math.pi / cfg.coarse_samples
    refined = minimize_scalar(
        lambda t: -slack(inst, t),
        bounds=(thetas[best] - step, thetas[best] + step),
        method="bounded",
        options={"maxiter": cfg.refine_iters, "xatol": 1e-12},
    )
    theta = float(refined.x)
    line = _line_for(inst, theta)
    if line is not None and is_transversal(inst, line, cfg.contain_tol):
        logger.debug(f"Transversal found by refinement at {math.degrees(theta):.6f} deg")
        return Direction(theta), line

    logger.info(f"No transversal: best slack {-refined.fun:.3e} at {math.degrees(theta):.4f} deg")
    return None
