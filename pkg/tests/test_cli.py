import io
import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from corrterm import cli
from corrterm.report import REPORT_SCHEMA, Report, format_rational, parse_rational


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    return data


@pytest.fixture
def rp3_file(tmp_path):
    path = tmp_path / "rp3.json"
    path.write_text(json.dumps({"vertices": 2, "edges": [[0, 1], [0, 1]]}))
    return str(path)


class TestExamples:
    def test_dinv_case_one(self):
        code, out, _ = run("dinv", "--braid", "1 -2 -2 1 -2 -2 -2 -2")
        assert code == 0
        assert "|det Q| = 20" in out
        data = run_json("dinv", "--braid", "1 -2 -2 1 -2 -2 -2 -2")
        assert data["class_count"] == 20 and len(data["d_table"]) == 20
        labelled = {lab: row["d"] for row in data["d_table"] for lab in row["labels"]}
        assert labelled == {"kappa0": "1/2", "kappa1": "-1/2", "kappa2": "-1/1", "kappa3": "-1/1"}

    def test_complexity_even(self):
        code, out, _ = run("complexity", "--family", "even", "1", "2")
        assert code == 0
        assert "C ∈ [4, 10]" in out

    def test_layer_odd(self):
        code, out, _ = run("layer", "--family", "odd", "0", "0", "0")
        assert code == 0
        assert "flips (9)" in out and "order 16" in out
        data = run_json("layer", "--family", "odd", "0", "0", "0")
        assert data["layering"]["tetrahedra"] == 9
        assert data["layering"]["h1_torsion"] == [4, 4]

    def test_norms_graph(self, rp3_file):
        data = run_json("norms", "--graph", rp3_file)
        assert [row["genus"] for row in data["genus_bounds"]] == ["1/1"]
        assert sorted(row["d"] for row in data["d_table"]) == ["-1/4", "1/4"]
        assert data["norms"]["lower"] is None

    def test_check_passes(self):
        code, out, _ = run("check", "--family", "odd", "1", "0", "0")
        assert code == 0 and "check: PASS" in out
        data = run_json("check", "--family", "even", "1", "2")
        assert data["check"]["oracle_mismatches"] == 0
        assert data["check"]["oracle_classes"] == 20
        assert data["check"]["h1_crosscheck"] is True

    def test_check_graph_has_no_crosscheck(self, rp3_file):
        data = run_json("check", "--graph", rp3_file)
        assert data["check"]["h1_crosscheck"] is None

    def test_check_reports_failure(self, monkeypatch):
        monkeypatch.setattr(cli, "brute_force_max", lambda f, c, r=None: Fraction(10**6))
        code, out, _ = run("check", "--family", "even", "1", "2")
        assert code == cli.EXIT_CHECK_FAILED and "check: FAIL" in out


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["dinv"],
            ["frobnicate", "--braid", "1"],
            ["dinv", "--braid", "1 3"],
            ["dinv", "--braid", "1 -2"],
            ["dinv", "--family", "odd", "1", "1"],
            ["dinv", "--family", "even", "x", "1"],
            ["dinv", "--family", "weird", "1", "1"],
            ["dinv", "--graph", "/nonexistent/graph.json"],
            ["dinv", "--braid", "1 -2 1 -2", "--family", "odd", "0", "0", "0"],
            ["complexity", "--family", "even", "1", "2", "--kmax", "-1"],
        ],
    )
    def test_usage(self, argv, capsys):
        code, _, _ = run(*argv)
        assert code == cli.EXIT_USAGE

    def test_layer_needs_braid(self, rp3_file):
        code, _, err = run("layer", "--graph", rp3_file)
        assert code == cli.EXIT_USAGE and "braid" in err

    def test_bad_graph_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"vertices": 3, "edges": [[0, 1]]}))
        code, _, err = run("dinv", "--graph", str(path))
        assert code == cli.EXIT_USAGE and "disconnected" in err

    def test_budget(self):
        code, _, err = run("dinv", "--family", "even", "1", "2", "--budget", "10")
        assert code == cli.EXIT_BUDGET and "budget" in err


class TestOutput:
    @pytest.mark.parametrize("cmd", ["dinv", "norms", "complexity", "layer", "check"])
    def test_roundtrip_and_schema(self, cmd):
        data = run_json(cmd, "--family", "odd", "1", "0", "2")
        report = Report.from_dict(data)
        assert report.command == cmd
        assert report.to_dict() == data
        assert Report.from_json(report.to_json()) == report

    def test_deterministic(self):
        argv = ("complexity", "--braid", "1 -2^3 1 -2 1 -2^5", "--json")
        assert run(*argv) == run(*argv)
        assert run(*argv[:-1]) == run(*argv[:-1])

    def test_rationals_lowest_terms(self):
        data = run_json("norms", "--family", "even", "2", "3")
        for row in data["d_table"]:
            for key in ("d", "norm_sq"):
                x = parse_rational(row[key])
                assert format_rational(x) == row[key]
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(Fraction(-2)) == "-2/1"

    def test_elision(self):
        data = run_json("dinv", "--family", "odd", "2", "2", "2")
        assert data["class_count"] == 320 and data["d_table_elided"]
        rows = data["d_table"]
        assert len(rows) < 10
        assert {lab for r in rows for lab in r["labels"]} == {f"kappa{i}" for i in range(4)}
        full = run_json("dinv", "--family", "odd", "2", "2", "2", "--full")
        assert not full["d_table_elided"] and len(full["d_table"]) == 320
        ds = [parse_rational(r["d"]) for r in full["d_table"]]
        kept = {parse_rational(r["d"]) for r in rows}
        assert max(ds) in kept and min(ds) in kept

    def test_schema_rejects_unknown_field(self):
        data = run_json("dinv", "--family", "odd", "0", "0", "0")
        data["extra"] = 1
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(data, REPORT_SCHEMA)
        with pytest.raises(ValueError):
            Report.from_dict(data)

    def test_schema_rejects_decimal_rational(self):
        data = run_json("dinv", "--family", "odd", "0", "0", "0")
        data["d_table"][0]["d"] = "0.5"
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(data, REPORT_SCHEMA)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "corrterm", "complexity", "--family", "even", "1", "1", "1", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "C ∈ [8, 16]" in proc.stdout
