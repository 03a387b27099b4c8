"""Brute-force oracles and seeded instance generation.

The corpus probe lives in pierce4.oracles.probe; it depends on the pipeline,
which in turn uses the brute-force oracle from this package.
"""

from pierce4.oracles.brute import (
    brute_force_piercing,
    candidate_points,
    exhaustive_interval_piercing,
    greedy_interval_piercing,
    grid_cell_radius,
    grid_scan_piercing,
)
from pierce4.oracles.generator import (
    BodySpec,
    CorpusConfig,
    GenConfig,
    corpus_bodies,
    gen_body,
    gen_instance,
    iter_corpus,
    parse_body,
)

__all__ = [
    "BodySpec",
    "CorpusConfig",
    "GenConfig",
    "brute_force_piercing",
    "candidate_points",
    "corpus_bodies",
    "exhaustive_interval_piercing",
    "gen_body",
    "gen_instance",
    "greedy_interval_piercing",
    "grid_cell_radius",
    "grid_scan_piercing",
    "iter_corpus",
    "parse_body",
]
