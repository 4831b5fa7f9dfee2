import json
from pathlib import Path

import pytest

from scaled_crystal import SCALED_CRYSTAL_CONFIG
from scaled_crystal.cli import Report, emit_schema, run, suite_items, verify_suite
from scaled_crystal.exceptions import InputError
from scaled_crystal.finite import b2, load_catalog

B2_TABLE = Path(__file__).resolve().parent.parent / "data" / "b2.json"


def bad_b2_catalog():
    data = b2(2).to_json()
    data["name"] = "bad_b2"
    data["scale"].update({"e12": "2/1", "e21": "1/1"})
    return {"semigroups": [data]}


def test_crystal_command(capsys):
    assert run(["crystal", "--table", str(B2_TABLE)]) == 0
    out = capsys.readouterr().out
    assert "crystal: ok" in out
    assert "e22" in out


def test_crystal_command_named(tmp_path):
    path = tmp_path / "report.json"
    assert run(["-q", "--json", str(path), "crystal", "--name", "b2_lambda_2"]) == 0
    report = json.loads(path.read_text())
    assert report["status"] == "ok"
    assert report["payload"]["ecx"] == ["e22"]


def test_crystal_command_violation(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad_b2_catalog()["semigroups"][0]))
    assert run(["crystal", "--table", str(path)]) == 1
    assert "witness" in capsys.readouterr().out


def test_zeta_command(capsys):
    assert run(["zeta", "--family", "axb", "--beta", "3", "--cutoff", "10000/1"]) == 0
    assert "1.6449" in capsys.readouterr().out


def test_zeta_command_divergent():
    assert run(["-q", "zeta", "--family", "axb", "--beta", "1.5"]) == 0
    assert run(["-q", "zeta", "--family", "axb", "--beta", "0"]) == 2


def test_kms_command(tmp_path):
    path = tmp_path / "kms.json"
    code = run(
        ["-q", "--json", str(path), "kms", "--family", "free", "--weights", "2,2", "--beta", "3",
         "--cutoff", "1024", "--element", '{"s": [0], "t": [0]}']
    )
    assert code == 0
    value = json.loads(path.read_text())["payload"]["value"]
    assert value["re"] == pytest.approx(0.125)


def test_bad_element_is_input_error():
    assert run(["-q", "kms", "--beta", "3", "--element", "not json"]) == 2
    assert run(["-q", "ground", "--element", '{"s": [1, 0]}']) == 2


def test_ktheory_dynamics(capsys):
    assert run(["ktheory", "--dynamics", "3,6"]) == 0
    assert "Z" in capsys.readouterr().out


def test_emit_schema(capsys):
    assert run(["--emit-schema"]) == 0
    assert json.loads(capsys.readouterr().out) == json.loads(json.dumps(emit_schema()))


def test_usage_errors():
    assert run(["frobnicate"]) == 2
    assert run([]) == 2
    assert run(["-v", "-q", "zeta", "--beta", "3"]) == 2


def test_missing_file_is_input_error():
    assert run(["-q", "crystal", "--table", "/nonexistent/table.json"]) == 2


def test_verify_reports_corrupted_catalog():
    catalog = load_catalog(bad_b2_catalog())
    report = verify_suite(5, catalog, "finite")
    assert report.status == "violation"
    assert report.exit_code == 1
    assert report.witness["check"] == "finite:bad_b2"
    assert report.witness["reason"] == "scale is not multiplicative"
    assert {report.witness["g"], report.witness["h"]} == {"e12", "e21"}
    assert report.payload["summary"]["failed"] >= 1


def test_verify_empty_catalog(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"semigroups": []}))
    assert run(["-q", "verify", "--suite", "finite", "--catalog", str(path)]) == 2
    with pytest.raises(InputError):
        suite_items(1, "finite", [])
    with pytest.raises(InputError):
        suite_items(1, "braids")


def test_verify_json_is_deterministic(tmp_path, monkeypatch):
    monkeypatch.setitem(SCALED_CRYSTAL_CONFIG, "snf_samples", 40)
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert run(["-q", "--json", str(first), "verify", "--suite", "ktheory", "--seed", "11"]) == 0
    assert run(["-q", "--json", str(second), "verify", "--suite", "ktheory", "--seed", "11"]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_violation_report_needs_witness():
    with pytest.raises(ValueError):
        Report("verify", "violation", {})


def test_package_exports_resolve():
    import scaled_crystal

    for name in scaled_crystal.__all__:
        assert hasattr(scaled_crystal, name), name
    assert scaled_crystal.cli.run is run
