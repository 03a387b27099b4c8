"""Tests for the command-line surface and the JSON documents."""

import json
import xml.etree.ElementTree as ET

import pytest

from pierce4.cli.schemas import CertificateModel, InstanceModel, RunReport, digest
from pierce4.config import settings
from pierce4.main import main
from pierce4.piercing import verify_certificate

SVG = "{http://www.w3.org/2000/svg}"


def _load(path):
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "instance.json"
    code = main(["gen", "--body", "disk256", "--families", "3", "--sizes", "2,3,1", "--seed", "5", "--out", str(path)])
    assert code == 0
    return path


# ============ gen ============

def test_gen_writes_a_versioned_instance(instance_file):
    data = _load(instance_file)
    assert data["schema_version"] == "1"
    assert data["seed"] == 5
    assert [len(f) for f in data["families"]] == [2, 3, 1]
    InstanceModel.model_validate(data).to_instance().validate()


def test_gen_is_deterministic(tmp_path, instance_file):
    again = tmp_path / "again.json"
    main(["gen", "--body", "disk256", "--families", "3", "--sizes", "2,3,1", "--seed", "5", "--out", str(again)])
    assert again.read_bytes() == instance_file.read_bytes()


def test_gen_rejects_unknown_body(tmp_path):
    assert main(["gen", "--body", "blob", "--out", str(tmp_path / "x.json")]) == 2


def test_gen_rejects_mismatched_sizes(tmp_path):
    assert main(["gen", "--families", "3", "--sizes", "1,2", "--out", str(tmp_path / "x.json")]) == 2


def test_gen_rejects_a_single_family(tmp_path):
    path = tmp_path / "single.json"
    assert main(["gen", "--families", "1", "--out", str(path)]) == 2
    assert not path.exists()


def test_seed_setting_overrides_flag(monkeypatch, tmp_path):
    monkeypatch.setattr(settings, "seed", 7)
    path = tmp_path / "seeded.json"
    assert main(["gen", "--seed", "1", "--out", str(path)]) == 0
    assert _load(path)["seed"] == 7


# ============ approx ============

def test_approx_square(tmp_path):
    out, svg = tmp_path / "approx.json", tmp_path / "approx.svg"
    assert main(["approx", "--body", "square", "--direction", "0", "--svg", str(svg), "--out", str(out)]) == 0

    report = RunReport.model_validate(_load(out))
    assert report.passed
    assert report.result["ratio"] == pytest.approx(1.0, abs=1e-9)
    assert report.tolerances["verify_tol"] == settings.contain_tol

    text = svg.read_text(encoding="utf-8")
    root = ET.fromstring(text.encode("utf-8"))
    assert root.tag == f"{SVG}svg"
    assert len(root.findall(f"{SVG}polygon")) == 4
    assert len(root.findall(f"{SVG}circle")) == 4
    assert len(report.result["touch_points"]) == 4
    assert "href" not in text


def test_approx_from_body_file(tmp_path):
    body = tmp_path / "body.json"
    body.write_text(json.dumps({"vertices": [[0, 0], [2, 0], [3, 1], [1, 1]]}), encoding="utf-8")
    out = tmp_path / "approx.json"
    assert main(["approx", "--body-file", str(body), "--direction", "0", "--out", str(out)]) == 0
    assert _load(out)["result"]["ratio"] == pytest.approx(1.0, abs=1e-9)


def test_approx_rejects_nonconvex_body(tmp_path):
    body = tmp_path / "body.json"
    body.write_text(json.dumps({"vertices": [[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]]}), encoding="utf-8")
    assert main(["approx", "--body-file", str(body)]) == 2


# ============ pierce and verify ============

def test_pierce_then_verify(tmp_path, instance_file):
    cert, svg, out = tmp_path / "cert.json", tmp_path / "pierce.svg", tmp_path / "pierce.json"
    code = main([
        "pierce", "--instance", str(instance_file),
        "--certificate-out", str(cert), "--svg", str(svg), "--out", str(out),
    ])
    assert code == 0

    report = RunReport.model_validate(_load(out))
    assert report.passed
    assert report.input_digest == digest(_load(instance_file))
    assert report.result["branch"] in ("TransversalFourPoints", "FallbackBruteForce")
    ET.fromstring(svg.read_bytes())

    verified = tmp_path / "verify.json"
    assert main(["verify", "--instance", str(instance_file), "--certificate", str(cert), "--out", str(verified)]) == 0
    assert _load(verified)["verification"]["passed"]


def test_verify_reports_a_corrupted_certificate(tmp_path, instance_file):
    cert = tmp_path / "cert.json"
    assert main(["pierce", "--instance", str(instance_file), "--certificate-out", str(cert), "--out", str(tmp_path / "r.json")]) == 0
    data = _load(cert)
    data["points"] = [[p[0] + 100.0, p[1]] for p in data["points"]]
    cert.write_text(json.dumps(data), encoding="utf-8")

    out = tmp_path / "verify.json"
    assert main(["verify", "--instance", str(instance_file), "--certificate", str(cert), "--out", str(out)]) == 1
    assert not _load(out)["passed"]


def test_missing_files_are_input_errors(tmp_path):
    missing = str(tmp_path / "missing.json")
    assert main(["verify", "--instance", missing, "--certificate", missing]) == 2
    assert main(["pierce", "--instance", missing]) == 2


def test_invalid_instance_document(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"body": {"vertices": [[0, 0], [1, 0]]}, "families": [[[0, 0]], [[0, 0]]]}), encoding="utf-8")
    assert main(["pierce", "--instance", str(path)]) == 2


def test_certificate_document_round_trip(tmp_path, instance_file):
    cert_path = tmp_path / "cert.json"
    main(["pierce", "--instance", str(instance_file), "--certificate-out", str(cert_path), "--out", str(tmp_path / "r.json")])
    model = CertificateModel.model_validate(_load(cert_path))
    assert model.schema_version == "1"
    inst = InstanceModel.model_validate(_load(instance_file)).to_instance()
    assert verify_certificate(inst, model.to_certificate()).passed
    assert CertificateModel.from_certificate(model.to_certificate()).points == model.points


# ============ bench ============

def test_bench_is_independent_of_jobs(tmp_path):
    one, two = tmp_path / "one.json", tmp_path / "two.json"
    assert main(["bench", "--seeds", "0:6", "--jobs", "1", "--out", str(one)]) == 0
    assert main(["bench", "--seeds", "0:6", "--jobs", "2", "--out", str(two)]) == 0
    first, second = _load(one), _load(two)
    assert first["result"]["summary"] == second["result"]["summary"]
    assert first["result"]["cases"] == second["result"]["cases"]
    assert first["result"]["summary"]["passed"] == 6


def test_bench_with_corpus_file_and_probe(tmp_path, capsys):
    corpus = tmp_path / "corpus.json"
    corpus.write_text(json.dumps({"bodies": [{"name": "square"}, {"name": "triangle"}], "n_values": [2], "max_size": 3}), encoding="utf-8")
    out = tmp_path / "bench.json"
    assert main(["bench", "--corpus", str(corpus), "--seeds", "4", "--probe", "--out", str(out)]) == 0
    result = _load(out)["result"]
    assert result["probe"]["cases"] == 4
    assert result["probe"]["below_optimum"] == 0
    assert "4/4 passed" in capsys.readouterr().err


def test_bench_with_no_seeds(tmp_path, capsys):
    out = tmp_path / "bench.json"
    assert main(["bench", "--seeds", "0:0", "--out", str(out)]) == 0
    assert "0 cases" in capsys.readouterr().err
    assert _load(out)["result"]["summary"]["cases"] == 0


def test_digest_ignores_key_order():
    assert digest({"b": 1, "a": [1, 2]}) == digest({"a": [1, 2], "b": 1})
    assert digest({"a": [1, 2]}) != digest({"a": [2, 1]})
