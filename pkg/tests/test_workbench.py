import json
import pathlib
import subprocess
import sys

import pytest

from scw import workbench
from scw.workbench import (SpecError, load_bundled, paper_suite, parse_data,
                           parse_spec, run_named, run_suite, serialize)

SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
FIXTURES = SRC / "scw" / "fixtures"


def test_parse_bundled_fixtures():
    for name in workbench.bundled_fixture_names():
        wf = load_bundled(name)
        assert len(wf.surfaces) == 1
        assert len(wf.covers) == 1
        assert wf.checks


def test_round_trip():
    for name in workbench.bundled_fixture_names():
        wf = load_bundled(name)
        again = parse_data(serialize(wf), where=name)
        assert again == wf
        assert serialize(again) == serialize(wf)


def test_parse_errors(tmp_path):
    with pytest.raises(SpecError):
        parse_data({"version": 99})
    with pytest.raises(SpecError) as err:
        parse_data({
            "version": 1,
            "surfaces": [{"id": "S", "script": [["free_point", "p"]], "blowups": [["p", "E1"]]}],
            "covers": [{
                "id": "c", "surface": "S", "group": [2],
                "branch": [{"name": "B", "class": {"E9": 1},
                            "subgroup_generator": [1], "character_exponent": 1,
                            "components": 1}],
                "reduced_L": [],
            }],
        })
    assert "E9" in str(err.value)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecError):
        parse_spec(bad)
    with pytest.raises(SpecError):
        parse_spec(tmp_path / "missing.json")


def test_duplicate_check_names_rejected():
    with pytest.raises(SpecError):
        parse_data({
            "version": 1,
            "checks": [
                {"name": "x", "kind": "range_filter", "k2": 7, "expected": [1, 3, 5, 7]},
                {"name": "x", "kind": "range_filter", "k2": 7, "expected": [1, 3, 5, 7]},
            ],
        })


def test_dangling_check_references_rejected():
    with pytest.raises(SpecError):
        parse_data({
            "version": 1,
            "checks": [{"name": "x", "kind": "catalog_counts", "surface": "nope",
                        "expected_minus_one": 0, "expected_minus_two": 0}],
        })
    with pytest.raises(SpecError):
        parse_data({
            "version": 1,
            "checks": [{"name": "x", "kind": "invariants", "cover": "nope",
                        "expected": {"chi": 1, "p_g": 0, "q": 0}}],
        })


def test_run_suite_filters_and_passes():
    wf = load_bundled("inoue_bidouble.json")
    lattice_only = run_suite(wf, suite="lattice", seed=0)
    assert lattice_only.all_passed
    everything = run_suite(wf, suite="all", seed=0)
    assert everything.all_passed
    assert len(everything.checks) > len(lattice_only.checks)
    with pytest.raises(SpecError):
        run_suite(wf, suite="nonsense")


def test_empty_check_list_passes():
    wf = parse_data({"version": 1})
    report = run_suite(wf)
    assert report.all_passed and report.checks == []


def test_paper_suite_green_and_byte_stable():
    r1 = paper_suite(seed=0)
    r2 = paper_suite(seed=0)
    assert r1.all_passed
    assert r1.to_text() == r2.to_text()
    assert r1.to_json() == r2.to_json()


def test_paper_suite_seed_invariant_outcomes():
    r0 = paper_suite(seed=0)
    r9 = paper_suite(seed=9)
    assert [(c.name, c.status) for c in r0.sorted_checks()] == \
        [(c.name, c.status) for c in r9.sorted_checks()]


def test_mutated_class_fails_exactly_the_relation_checks():
    raw = json.loads((FIXTURES / "inoue_z2z4.json").read_text())
    for entry in raw["covers"][0]["reduced_L"]:
        if entry["character"] == [1, 0]:
            entry["class"]["Q3p"] = entry["class"]["Q3p"] + 1
    wf = parse_data(raw, where="mutated")
    report = run_suite(wf, suite="cover", seed=0)
    failed = sorted(c.name for c in report.checks if c.status == "fail")
    assert failed == [
        "inoue_z2z4/relation-c10",
        "z2z4/relation-sum-chi/equals-2L",
    ]
    unsupported = {c.name for c in report.checks if c.status == "unsupported"}
    assert "z2z4/invariants" in unsupported
    assert not report.all_passed


def test_run_named_unknown_tag():
    with pytest.raises(SpecError):
        run_named("lemma-99")
    assert run_named("prop-3.7").all_passed


def run_cli(*args, env=None):
    import os

    full_env = dict(os.environ)
    full_env["PYTHONPATH"] = str(SRC)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "scw.cli", *args],
        capture_output=True, text=True, env=full_env,
    )


def test_cli_verify_and_exit_codes(tmp_path):
    proc = run_cli("verify", str(FIXTURES / "inoue_bidouble.json"), "--suite", "lefschetz")
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    proc = run_cli("verify", str(bad))
    assert proc.returncode == 2
    assert "error:" in proc.stderr
    failing = tmp_path / "failing.json"
    failing.write_text(json.dumps({
        "version": 1,
        "checks": [{"name": "wrong", "kind": "gram_det", "suite": "lattice",
                    "matrix": [[2]], "expected": 3}],
    }))
    proc = run_cli("verify", str(failing))
    assert proc.returncode == 1
    assert "FAIL" in proc.stdout


def test_cli_report_output(tmp_path):
    out = tmp_path / "report.json"
    proc = run_cli("verify", str(FIXTURES / "inoue_bidouble.json"),
                   "--suite", "lattice", "--report", str(out))
    assert proc.returncode == 0
    payload = json.loads(out.read_text())
    assert payload["summary"]["fail"] == 0
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_cli_h0():
    proc = run_cli("h0", str(FIXTURES / "inoue_z2z4.json"), "Y",
                   '{"L": 2, "Q": -1, "Q1": -1, "Q2": -1, "Q3": -1}')
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2"
    proc = run_cli("h0", str(FIXTURES / "inoue_z2z4.json"), "Y", '{"L": 1, "Zq": -1}')
    assert proc.returncode == 2


def test_cli_lefschetz_and_seed_env():
    proc = run_cli("lefschetz", "lemma-3.1")
    assert proc.returncode == 0
    proc = run_cli("lefschetz", "unknown-tag")
    assert proc.returncode == 2
    proc = run_cli("lefschetz", "corollary-1.3", env={"SCW_SEED": "31"})
    assert proc.returncode == 0
    assert "(seed 31)" in proc.stdout


def test_fault_injected_check_fails_cleanly():
    wf = parse_data({
        "version": 1,
        "checks": [{"name": "bad-det", "kind": "gram_det", "suite": "lattice",
                    "matrix": [[1, 0], [0, 1]], "expected": 5}],
    })
    report = run_suite(wf)
    assert [c.status for c in report.checks] == ["fail"]
