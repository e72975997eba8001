import csv
import io
import json
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from pappus_chain.cli import CHAIN_RECORD_SCHEMA, run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_json(capsys):
    code, out, _ = run(capsys, "generate", "--variant", "alpha", "--a", "1", "--b", "1", "--n", "-2..3", "--format", "json")
    assert code == 0
    records = json.loads(out)
    jsonschema.validate(records, CHAIN_RECORD_SCHEMA)
    assert [r["n"] for r in records] == [-2, -1, 0, 1, 2, 3]
    one = records[3]
    assert (one["x"], one["y"], one["r"]) == ("0", "4/3", "2/3")
    kinds = {t["other"]: t["kind"] for t in one["tangencies"]}
    assert kinds["beta"] == "external" and kinds["gamma"] == "internal"
    assert kinds["delta[0]"] == "external" and kinds["delta[2]"] == "external"


def test_generate_gamma_seed_signed(capsys):
    code, out, _ = run(capsys, "generate", "--variant", "gamma", "--a", "2", "--b", "1", "--n", "0..1")
    seed = json.loads(out)[0]
    assert seed["r"] == "-3"
    assert {t["other"]: t["kind"] for t in seed["tangencies"]} == {
        "alpha": "internal",
        "beta": "internal",
        "delta[1]": "internal",
    }


def test_generate_csv_file(tmp_path, capsys):
    out = tmp_path / "chain.csv"
    code, _, _ = run(capsys, "generate", "--variant", "beta", "--a", "3/2", "--b", "1", "--n", "-1..1", "--format", "csv", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ["n", "x", "y", "r"]
    assert len(rows) == 4
    assert rows[2] == ["0", "-1", "0", "1"]


def test_generate_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        run(capsys, "generate", "--variant", "gamma", "--a", "5/3", "--b", "7/2", "--n", "-4..4", "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_all(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--all", "--a", "1", "--b", "1", "--bound", "8", "--report", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["ok"] is True
    for name in ("theorem1", "theorem2", "corollary", "tangency", "oracle", "pappus", "eq3"):
        assert doc["counts"][name]["checked"] > 0
        assert doc["counts"][name]["failed"] == 0
        assert name in out


def test_verify_gamma_reports_skipped(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--variant", "gamma", "--a", "1", "--b", "1", "--bound", "8", "--report", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["counts"]["theorem1"]["skipped_degenerate"] == 17
    skipped = [s for s in doc["skipped"] if s["identity"] == "theorem1"]
    assert all(s["parameters"]["i"] == 0 for s in skipped)


def test_verify_needs_parameters(capsys):
    assert run(capsys, "verify", "--all")[0] == 1
    assert run(capsys, "verify", "--all", "--grid", "--a", "1")[0] == 1


def test_verify_grid_small_bound(capsys):
    code, out, _ = run(capsys, "verify", "--variant", "beta", "--grid", "--bound", "1")
    assert code == 0
    assert "all checks hold" in out


def test_verify_failure_exit_code(monkeypatch, capsys):
    from fractions import Fraction

    import pappus_chain.verify as verify_mod
    from pappus_chain.chain import CheckResult

    def broken(spec, n, circle=None):
        return CheckResult("pappus", {"n": n}, Fraction(1), Fraction(2))

    monkeypatch.setattr(verify_mod, "pappus_check", broken)
    code, _, err = run(capsys, "verify", "--variant", "alpha", "--a", "1", "--b", "1", "--bound", "1")
    assert code == 2
    assert "FAILED pappus" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--variant", "alpha", "--a", "1", "--b", "1", "--bogus"],
        ["generate", "--variant", "omega", "--a", "1", "--b", "1"],
        ["generate", "--variant", "alpha", "--a", "1.5", "--b", "1"],
        ["generate", "--variant", "alpha", "--a", "-1", "--b", "1"],
        ["generate", "--variant", "alpha", "--a", "1", "--b", "1", "--n", "3..1"],
        ["verify", "--variant", "alpha", "--a", "1", "--b", "1", "--bound", "0"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_ladder_dump(capsys):
    code, out, _ = run(capsys, "ladder", "--variant", "alpha", "--a", "1", "--b", "1", "--n", "1", "--power", "16/3")
    assert code == 0
    doc = json.loads(out)
    assert doc["inversion"] == {"center": {"x": "-2", "y": "0"}, "power": "16/3"}
    assert doc["image_lines"][0] == {"coefA": "3", "coefB": "0", "coefC": "-2"}
    assert doc["ladder_circle"] == {"center": {"x": "0", "y": "4/3"}, "r": "2/3"}
    assert doc["circle"]["center"] == {"x": "0", "y": "4/3"}
    assert doc["matches_closed_form"] is True


def test_ladder_orthogonal(capsys):
    code, out, _ = run(capsys, "ladder", "--variant", "beta", "--a", "3/2", "--b", "1", "--n", "-3", "--power", "orthogonal")
    assert code == 0
    doc = json.loads(out)
    assert doc["ladder_circle"] == {k: doc["circle"][k] for k in ("center", "r")}


def test_ladder_bad_power(capsys):
    assert run(capsys, "ladder", "--variant", "beta", "--a", "1", "--b", "1", "--n", "1", "--power", "x")[0] == 1
    assert run(capsys, "ladder", "--variant", "beta", "--a", "1", "--b", "1", "--n", "1", "--power", "-1")[0] == 1


@pytest.mark.parametrize("preset, circles", [("fig1", 9), ("fig2", 10), ("fig3", 9)])
def test_figure_presets(tmp_path, preset, circles, capsys):
    out = tmp_path / f"{preset}.svg"
    assert run(capsys, "figure", "--preset", preset, "--out", str(out))[0] == 0
    root = ET.fromstring(out.read_bytes())
    assert len(list(root.iter("{http://www.w3.org/2000/svg}circle"))) == circles


def test_figure_explicit_flags(capsys):
    code, out, _ = run(
        capsys, "figure", "--variant", "alpha", "--a", "1", "--b", "1", "--n", "-2..3", "--theorem1", "1,3", "--no-labels"
    )
    assert code == 0
    root = ET.fromstring(out.encode())
    assert len(list(root.iter("{http://www.w3.org/2000/svg}line"))) == 2


def test_figure_degenerate_exit_code(capsys):
    code, _, err = run(capsys, "figure", "--variant", "gamma", "--a", "1", "--b", "1", "--n", "0..3", "--theorem1", "0,2")
    assert code == 3
    assert "Theorem1Overlay" in err


def test_figure_preset_conflict(capsys):
    assert run(capsys, "figure", "--preset", "fig1", "--variant", "beta")[0] == 1
