"""Instances of translate families and line transversals."""

from pierce4.transversal.instance import Instance, Interval
from pierce4.transversal.search import (
    common_point,
    find_transversal,
    is_transversal,
    project_to_intervals,
    slack,
    transversal_in_direction,
)

__all__ = [
    "Instance",
    "Interval",
    "common_point",
    "find_transversal",
    "is_transversal",
    "project_to_intervals",
    "slack",
    "transversal_in_direction",
]
