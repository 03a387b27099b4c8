"""Fixed-direction inscribed-parallelogram approximation."""

from pierce4.approx.homothety import (
    ApproxReport,
    ApproxResult,
    CheckResult,
    circumscribed_parallelogram,
    find_homothetic_pair,
    homothety_gap,
    inscribed_parallelogram,
    verify_approx,
)
from pierce4.approx.profile import ChordProfile, build_chord_profile, eps_shave, needs_shave

__all__ = [
    "ApproxReport",
    "ApproxResult",
    "CheckResult",
    "ChordProfile",
    "build_chord_profile",
    "circumscribed_parallelogram",
    "eps_shave",
    "find_homothetic_pair",
    "homothety_gap",
    "inscribed_parallelogram",
    "needs_shave",
    "verify_approx",
]
