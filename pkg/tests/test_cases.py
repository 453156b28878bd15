import json

import pytest

from voakit.cases import RUNNERS, UnknownCase, registry, run_case


def test_registry_matches_runners():
    ids = [c["id"] for c in registry()]
    assert len(ids) == len(set(ids))
    assert set(ids) == set(RUNNERS)
    assert {c["criterion"] for c in registry()} == set(range(1, 13))


def test_registry_fields():
    for c in registry():
        assert set(c) >= {"id", "criterion", "title", "module", "inputs", "expected", "provenance",
                          "tolerance", "conditional"}
        assert c["provenance"].startswith(("[PAPER]", "[DERIVED]", "[TRIVIAL]"))
        assert c["tolerance"] in ("exact", "exact to truncation N")


def test_unknown_case():
    with pytest.raises(UnknownCase):
        run_case("no-such-case")


def test_wang_case_reports_c():
    r = run_case("wang-c2")
    assert r.passed
    assert r.to_dict()["computed"]["central_charge"] == "-2"


def test_bp_skipped_without_data(monkeypatch, tmp_path):
    monkeypatch.setenv("VOAKIT_DATA", str(tmp_path))
    r = run_case("bp-u05-coeff")
    assert r.status == "skipped" and not r.checks


def test_report_is_deterministic():
    a = json.dumps([run_case(i).to_dict() for i in ("ising-decomp", "lattice-suite", "modrep-suite")])
    b = json.dumps([run_case(i).to_dict() for i in ("ising-decomp", "lattice-suite", "modrep-suite")])
    assert a == b
    assert "elapsed" not in a


def test_failed_case_has_witness():
    d = run_case("c2-central-charge").to_dict()
    assert d["status"] == "fail" and d["witness"]["name"] == "central_charge"
