"""Tests for the colorful interval step."""

import numpy as np
import pytest

from pierce4.errors import HypothesisViolation
from pierce4.piercing import colorful_interval_pierce
from pierce4.transversal import Interval


def _families(*families):
    return [[Interval(lo, hi) for lo, hi in fam] for fam in families]


def test_disjoint_pair_fixes_the_family():
    j, t = colorful_interval_pierce(_families([(0, 1), (4, 5)], [(0.5, 4.5)]))
    assert (j, t) == (0, 2.5)


def test_disjoint_pair_in_a_later_family():
    j, t = colorful_interval_pierce(_families([(0.5, 4.5)], [(4, 5), (0, 1)]))
    assert (j, t) == (1, 2.5)


def test_all_intersecting_returns_largest_left_end():
    assert colorful_interval_pierce(_families([(0, 2)], [(1, 3)])) == (0, 1.0)
    j, t = colorful_interval_pierce(_families([(0, 1), (0.2, 0.9)], [(0.5, 2)]))
    assert j == 0
    assert 0.5 <= t <= 0.9


def test_no_intervals():
    assert colorful_interval_pierce([]) == (0, 0.0)
    assert colorful_interval_pierce([[], []]) == (0, 0.0)


def test_cross_family_gap_is_a_hypothesis_violation():
    with pytest.raises(HypothesisViolation) as excinfo:
        colorful_interval_pierce(_families([(0, 1)], [(2, 3)]))
    assert excinfo.value.details["first"][0] == 0
    assert excinfo.value.details["second"][0] == 1


def _random_system(rng):
    """Families of intervals built one at a time, keeping every cross pair intersecting."""
    n = int(rng.integers(2, 6))
    sizes = rng.integers(1, 7, size=n)
    families = [[] for _ in range(n)]
    for _ in range(200):
        if all(len(f) == s for f, s in zip(families, sizes)):
            break
        i = int(rng.integers(n))
        if len(families[i]) == sizes[i]:
            continue
        lo = float(rng.uniform(0, 10))
        iv = Interval(lo, lo + float(rng.uniform(0.2, 6)))
        if all(iv.intersects(other) for k, fam in enumerate(families) if k != i for other in fam):
            families[i].append(iv)
    return families


def _check_systems(rng, count):
    for _ in range(count):
        families = _random_system(rng)
        j, t = colorful_interval_pierce(families)
        for i, fam in enumerate(families):
            if i == j:
                continue
            for iv in fam:
                assert iv.lo <= t <= iv.hi, (families, j, t)


def test_random_systems(rng):
    _check_systems(rng, 500)


@pytest.mark.slow
def test_random_systems_full():
    _check_systems(np.random.default_rng(7), 10_000)
