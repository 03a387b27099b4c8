"""End-to-end tests for pierce and verify_certificate."""

import dataclasses
import itertools

import numpy as np
import pytest

from pierce4.config import PierceConfig, TransversalConfig
from pierce4.errors import InvalidInstance, NoRootFound, PipelineFailure
from pierce4.geometry import contains_point, line_distance_to_polygon, translates_intersect
from pierce4.oracles.generator import BodySpec, CorpusConfig, GenConfig, gen_instance, iter_corpus
from pierce4.piercing import (
    Branch,
    PiercingCertificate,
    assign_points,
    pierce,
    prune_points,
    verify_certificate,
)
from pierce4.transversal import Instance

# Only the horizontal direction is tried, without refinement
HORIZONTAL_ONLY = PierceConfig(transversal=TransversalConfig(coarse_samples=1, refine_iters=0))


def _assert_sound(inst, cert):
    report = verify_certificate(inst, cert)
    assert report.passed, report.to_dict()
    limit = 4 if cert.branch is Branch.TRANSVERSAL_FOUR_POINTS else 3
    assert 1 <= len(cert.points) <= limit


@pytest.fixture
def blocked_instance(unit_square):
    """No horizontal transversal: family 0 has a gap that family 1 bridges."""
    return Instance(unit_square, [[[0, 0], [0, 1.8]], [[0, 0.9]]])


# ============ Examples ============

def test_single_translates_at_one_offset(unit_square):
    inst = Instance(unit_square, [[[0.3, 0.3]], [[0.3, 0.3]]])
    cert = pierce(inst)
    _assert_sound(inst, cert)
    assert cert.branch is Branch.TRANSVERSAL_FOUR_POINTS
    assert any(contains_point(unit_square, p - [0.3, 0.3], 1e-9) for p in cert.points)


@pytest.mark.parametrize("seed", range(5))
def test_disk_with_three_families(seed):
    inst = gen_instance(GenConfig(seed=seed, n_families=3, body=BodySpec(name="disk256")))
    cert = pierce(inst)
    _assert_sound(inst, cert)


def test_triangle_with_pairwise_disjoint_family(triangle):
    spread = [[1, 0], [-0.1, 1], [-1, 0.1], [0.1, -1]]
    compact = [[0, 0], [0.0005, -0.0005]]
    inst = Instance(triangle, [0.999 * np.array(spread, dtype=float), compact])
    for x, y in itertools.combinations(inst.families[0], 2):
        assert not translates_intersect(triangle, x, y)

    cert = pierce(inst)
    _assert_sound(inst, cert)


def test_transversal_branch_lines():
    inst = gen_instance(GenConfig(seed=3, n_families=4, sizes=[3], body=BodySpec(name="random", seed=1)))
    cert = pierce(inst)
    assert cert.branch is Branch.TRANSVERSAL_FOUR_POINTS
    assert cert.approx is not None and cert.approx.ratio <= 2.0 + 1e-3
    for i, k, _ in inst.translates():
        poly = inst.translate(i, k)
        assert line_distance_to_polygon(cert.ell, poly) <= 1e-9
        if i != cert.excluded_family:
            assert line_distance_to_polygon(cert.ell_prime, poly) <= 1e-9


def test_adding_a_duplicate_member_keeps_a_certificate():
    inst = gen_instance(GenConfig(seed=11, n_families=3, sizes=[2], body=BodySpec(name="disk256")))
    bigger = inst.with_member(1, inst.families[1][0])
    assert bigger.validate() is bigger
    _assert_sound(bigger, pierce(bigger))


def test_growing_the_excluded_family_keeps_the_certificate(rng):
    for gen_cfg in iter_corpus(CorpusConfig(), range(40)):
        inst = gen_instance(gen_cfg)
        cert = pierce(inst)
        j = cert.excluded_family
        before = verify_certificate(inst, cert)
        for x in (inst.families[j][0], inst.families[j][-1] + rng.normal(scale=0.05, size=2)):
            grown = inst.with_member(j, x)
            report = verify_certificate(grown, cert)
            assert report.passed, (gen_cfg.seed, report.to_dict())
            assert report.checked == before.checked


def test_invalid_instance_is_rejected(unit_square):
    with pytest.raises(InvalidInstance):
        pierce(Instance(unit_square, [[[0, 0]], [[3, 0]]]))
    with pytest.raises(InvalidInstance):
        pierce(Instance(unit_square, [[[0, 0]]]))


# ============ Fallback ============

def test_fallback_when_no_transversal_is_found(blocked_instance):
    cert = pierce(blocked_instance, HORIZONTAL_ONLY)
    assert cert.branch is Branch.FALLBACK_BRUTE_FORCE
    assert cert.excluded_family == 0
    assert cert.ell is None and cert.approx is None
    assert len(cert.points) == 1
    _assert_sound(blocked_instance, cert)


def test_branch_error_routes_to_fallback(monkeypatch, unit_square):
    def broken(*args, **kwargs):
        raise NoRootFound("no root")

    monkeypatch.setattr("pierce4.piercing.pipeline.find_homothetic_pair", broken)
    inst = Instance(unit_square, [[[0, 0]], [[0.5, 0.5]]])
    cert = pierce(inst)
    assert cert.branch is Branch.FALLBACK_BRUTE_FORCE
    _assert_sound(inst, cert)


def test_both_branches_failing_is_loud(monkeypatch, blocked_instance):
    monkeypatch.setattr("pierce4.piercing.pipeline._fallback_branch", lambda inst, cfg: None)
    with pytest.raises(PipelineFailure) as excinfo:
        pierce(blocked_instance, HORIZONTAL_ONLY)
    assert excinfo.value.details["instance"] == blocked_instance.to_dict()


# ============ Assignment ============

def test_assign_points_reports_missing(unit_square):
    inst = Instance(unit_square, [[[0, 0], [5, 5]], [[0.5, 0.5]]])
    assignment, missing = assign_points(inst, np.array([[0.8, 0.8]]), excluded=1, tol=1e-9)
    assert assignment == {(0, 0): 0}
    assert missing == [(0, 1)]


def test_prune_points_renumbers():
    points = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    kept, assignment = prune_points(points, {(0, 0): 2, (0, 1): 2, (1, 0): 0})
    np.testing.assert_array_equal(kept, [[0.0, 0.0], [2.0, 2.0]])
    assert assignment == {(0, 0): 1, (0, 1): 1, (1, 0): 0}


# ============ verify_certificate ============

def test_perturbed_point_is_reported(disk):
    inst = gen_instance(GenConfig(seed=2, n_families=3, body=BodySpec(name="disk256")))
    cert = pierce(inst)
    moved = dataclasses.replace(cert, points=cert.points + 2.0 * disk.diameter)
    report = verify_certificate(inst, moved)
    assert not report.passed
    assert {v["kind"] for v in report.violations} == {"not_contained"}


def test_empty_families_pass_vacuously(unit_square):
    inst = Instance(unit_square, [[[0, 0]], np.zeros((0, 2))])
    cert = PiercingCertificate(Branch.FALLBACK_BRUTE_FORCE, excluded_family=0, points=np.zeros((0, 2)))
    report = verify_certificate(inst, cert)
    assert report.passed
    assert report.checked == 0


def test_structural_violations(unit_square):
    inst = Instance(unit_square, [[[0, 0]], [[0.5, 0.5]]])
    too_many = PiercingCertificate(Branch.FALLBACK_BRUTE_FORCE, 0, np.full((4, 2), 0.7), assignment={(1, 0): 0})
    assert [v["kind"] for v in verify_certificate(inst, too_many).violations] == ["too_many_points"]

    bad_family = PiercingCertificate(Branch.TRANSVERSAL_FOUR_POINTS, 5, np.array([[0.7, 0.7]]))
    kinds = [v["kind"] for v in verify_certificate(inst, bad_family).violations]
    assert kinds[0] == "bad_excluded_family"
    assert "unassigned" in kinds

    nan_point = PiercingCertificate(Branch.TRANSVERSAL_FOUR_POINTS, 0, np.array([[np.nan, 0.0]]))
    assert [v["kind"] for v in verify_certificate(inst, nan_point).violations] == ["non_finite_point"]


def test_certificate_to_dict(unit_square):
    inst = Instance(unit_square, [[[0.3, 0.3]], [[0.3, 0.3]]])
    data = pierce(inst).to_dict()
    assert list(data) == ["branch", "excluded_family", "points", "ell", "ell_prime", "assignment", "approx"]
    assert data["branch"] == "TransversalFourPoints"
    assert data["assignment"] == sorted(data["assignment"])


# ============ Corpus ============

def _run_corpus(seeds):
    for gen_cfg in iter_corpus(CorpusConfig(), seeds):
        inst = gen_instance(gen_cfg)
        cert = pierce(inst)
        _assert_sound(inst, cert)


def test_corpus_end_to_end():
    _run_corpus(range(60))


@pytest.mark.slow
def test_corpus_end_to_end_full():
    _run_corpus(range(1000))
