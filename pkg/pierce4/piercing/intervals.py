"""Colorful interval step: one family whose removal leaves a common point."""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from pierce4.errors import HypothesisViolation
from pierce4.transversal.instance import Interval

logger = logging.getLogger(__name__)


def colorful_interval_pierce(families: Sequence[Sequence[Interval]]) -> Tuple[int, float]:
    """(j, t) with t inside every interval of every family other than j.

    When all intervals meet, j = 0 and t is the largest left endpoint.
    Otherwise the first disjoint pair in (family, member) order fixes j,
    and t is the midpoint of the gap between the pair.
    """
    owners: List[int] = [i for i, fam in enumerate(families) for _ in fam]
    flat = [iv for fam in families for iv in fam]
    if not flat:
        return 0, 0.0

    lo = np.array([iv.lo for iv in flat])
    hi = np.array([iv.hi for iv in flat])
    disjoint = np.triu((hi[:, None] < lo[None, :]) | (hi[None, :] < lo[:, None]), k=1)
    pairs = np.argwhere(disjoint)
    if not len(pairs):
        return 0, float(lo.max())

    a, b = (int(x) for x in pairs[0])
    if owners[a] != owners[b]:
        raise HypothesisViolation(
            "intervals of different families are disjoint",
            {"first": [owners[a], a], "second": [owners[b], b],
             "intervals": [[flat[a].lo, flat[a].hi], [flat[b].lo, flat[b].hi]]},
        )
    left, right = (a, b) if hi[a] < lo[b] else (b, a)
    t = 0.5 * (float(hi[left]) + float(lo[right]))
    logger.debug(f"Disjoint pair in family {owners[a]}: gap [{hi[left]!r}, {lo[right]!r}], t={t!r}")
    return owners[a], t
