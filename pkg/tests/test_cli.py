import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from weyl_lab.cli import main
from weyl_lab.suites import REGISTRY, SuiteConfig, emit_report, report_document, report_schema, run_suite


@pytest.fixture(scope="module")
def weyl_reports():
    return run_suite(SuiteConfig("weyl", seed=5))


def test_weyl_suite_passes(weyl_reports):
    (rep,) = weyl_reports
    assert rep.overall == "pass"
    assert {r.check_id for r in rep.records} == {c.check_id for c in REGISTRY["weyl"]}


def test_json_validates_against_schema(weyl_reports):
    doc = json.loads(emit_report(weyl_reports, "json"))
    jsonschema.validate(doc, report_schema())
    first = doc["suites"][0]["checks"][0]
    assert list(first)[:6] == ["check_id", "anchor", "verdict", "value", "tolerance", "runtime_ms"]


def test_csv_has_one_row_per_check(weyl_reports):
    rows = list(csv.DictReader(io.StringIO(emit_report(weyl_reports, "csv-summary"))))
    assert len(rows) == len(weyl_reports[0].records)
    assert all(r["verdict"] == "pass" for r in rows)


def test_determinism_modulo_runtime():
    a = run_suite(SuiteConfig("torus", seed=11))
    b = run_suite(SuiteConfig("torus", seed=11))
    dump = lambda r: json.dumps(report_document(r, runtime=False))
    assert dump(a) == dump(b)


def test_tolerance_override_can_fail_a_check():
    (rep,) = run_suite(SuiteConfig("torus", tolerances={"torus.relation": 1e-20}))
    verdicts = {r.check_id: r.verdict for r in rep.records}
    assert verdicts["torus.relation"] == "fail"
    assert rep.overall == "fail"


@pytest.mark.parametrize("config", [
    SuiteConfig("nope"),
    SuiteConfig("weyl", tolerances={"weyl.missing": 1.0}),
    SuiteConfig("weyl", tolerances={"weyl.unitarity": -1.0}),
    SuiteConfig("weyl", seed=-1),
    SuiteConfig("weyl", format="xml"),
])
def test_invalid_configs(config):
    from weyl_lab.suites import ConfigError
    with pytest.raises(ConfigError):
        run_suite(config)


def test_cli_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "torus", "--seed", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["overall"] == "pass" and doc["suites"][0]["seed"] == 3


def test_cli_fails_on_override(capsys):
    assert main(["verify", "torus", "--tol", "torus.trace_state=1e-30", "--format", "csv-summary"]) == 1
    assert "torus.trace_state,fail" in capsys.readouterr().out


def test_cli_empty_points_file(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert main(["verify", "all", "--points", str(empty)]) != 0
    assert "no points" in capsys.readouterr().err


def test_cli_bad_points_and_measure_files(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("1, 2\n")
    assert main(["verify", "states", "--points", str(bad)]) == 1
    assert main(["verify", "measures", "--measures", str(tmp_path / "missing.json")]) == 1


def test_cli_custom_points(tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text("1, 0, 0\n1, 0, 1\n1, 1, 0\n1, 1/2, 1/2\n")
    out = tmp_path / "r.json"
    assert main(["verify", "states", "--points", str(pts), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    rec = next(r for r in doc["suites"][0]["checks"] if r["check_id"] == "states.kernel_psd")
    assert rec["details"]["point_sets"] == 1


def test_cli_custom_measure(tmp_path):
    m = tmp_path / "mu.json"
    m.write_text(json.dumps({"d": 2, "atoms": [{"x": [0, 1], "re": 1.0, "im": 0.5}, {"x": [2, -1], "re": -0.3}]}))
    assert main(["verify", "measures", "--measures", str(m), "--seed", "42", "--out", str(tmp_path / "o.json")]) == 0


def test_cli_bad_tolerance_syntax():
    with pytest.raises(SystemExit):
        main(["verify", "weyl", "--tol", "oops"])


@pytest.mark.parametrize("suite", ["states", "gns", "measures"])
def test_suites_pass_with_seed_42(suite):
    (rep,) = run_suite(SuiteConfig(suite, seed=42))
    assert rep.overall == "pass", [r for r in rep.records if r.verdict != "pass"]
    if suite == "measures":
        mc = next(r for r in rep.records if r.check_id == "measures.gaussian_mc")
        assert all("stderr" in run for run in mc.details["runs"])


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weyl_lab.cli", "verify", "torus", "--format", "csv-summary"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("suite,check_id,verdict")
