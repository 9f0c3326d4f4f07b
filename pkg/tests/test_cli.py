from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from quarticnodes.cli import main, run
from quarticnodes.cli.parsing import (
    ParseError,
    data_path,
    format_points,
    format_spec,
    parse_form,
    parse_points,
    parse_spec,
    read_points,
    read_spec,
)
from quarticnodes.core import GF, QQ, Form, ProjectivePoint
from strategies import forms, points

SPECS = ["burkhardt.spec", "delpezzo.spec", "delpezzo_mixed.spec", "delpezzo_perturbed.spec",
         "fermat.spec", "plane.spec", "plane_perturbed.spec", "quadric.spec"]
REPORT_KEYS = {"command", "inputs", "results", "citations", "assumptions"}


def _ok(*argv: str) -> str:
    res = run(list(argv))
    assert res.code == 0, res.error
    return res.output


def _json(*argv: str) -> dict:
    data = json.loads(_ok(*argv, "--json"))
    assert set(data) == REPORT_KEYS
    return data


class TestExitCodes:
    def test_malformed_points_file(self):
        res = run(["defect", "--points", "malformed.pts"])
        assert res.code == 2 and res.output == ""
        assert "'zz'" in res.error and "malformed.pts:3" in res.error

    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["defect"],
        ["defect", "--points", "grid9.pts", "--degree", "0"],
        ["defect", "--points", "grid9.pts", "--degree", "three"],
        ["defect", "--points", "no-such-file.pts"],
        ["agp", "--points", "grid9.pts", "--max-line", "4", "--max-conic", "3"],
        ["scan", "--family", "burkhardt", "--prime", "4"],
        ["invariants", "--nodes", "16"],
        ["invariants", "--nodes", "1", "--defect", "0", "--points", "grid9.pts"],
        ["verdict", "--rule", "shokurov", "--k2l", "3"],
        ["verdict", "--degree", "4", "--nodes", "9", "--chi", "3", "--rule", "bound"],
        ["family"],
        ["family", "--spec", "plane.spec", "--family", "plane"],
        ["family", "--family", "delpezzo"],
        ["family", "--spec", "plane.spec", "--write-points", "x.pts"],
        ["separator", "--points", "agp_general8.pts", "--exclude", "8"],
        ["separator", "--points", "agp_general8.pts", "--exclude", "0", "--degree", "4"],
    ])
    def test_usage_errors(self, argv):
        res = run(argv)
        assert res.code == 2 and res.output == "" and res.error.startswith("quarticnodes: error:")

    @pytest.mark.parametrize("argv", [
        ["separator", "--points", "grid9.pts", "--exclude", "0"],
        ["invariants", "--nodes", "46", "--defect", "0"],
        ["verdict", "--degree", "4", "--nodes", "46"],
        ["verdict", "--k2l", "9", "--k2s", "5", "--r", "1"],
        ["classify", "--spec", "fermat.spec", "--point", "1:1:1:1:1"],
    ])
    def test_computation_errors(self, argv):
        res = run(argv)
        assert res.code == 1 and res.output == "" and "computation error" in res.error

    def test_main_writes_streams(self, capsys):
        assert main(["invariants", "--nodes", "0", "--defect", "0"]) == 0
        assert "chi: -56" in capsys.readouterr().out
        assert main(["defect", "--points", "malformed.pts"]) == 2
        assert "offending token" in capsys.readouterr().err


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["defect", "--points", "grid9.pts"],
        ["agp", "--points", "agp_conic7.pts", "--json"],
        ["separator", "--points", "agp_general8.pts", "--exclude", "3"],
        ["scan", "--spec", "burkhardt.spec", "--prime", "7"],
        ["verdict", "--degree", "5", "--nodes", "20"],
    ])
    def test_byte_identical(self, argv):
        first = _ok(*argv)
        assert _ok(*argv) == first
        assert "timestamp" not in first

    def test_timestamp_on_request(self):
        out = _ok("invariants", "--nodes", "1", "--defect", "0", "--timestamps")
        assert out.splitlines()[-1].startswith("timestamp: ")
        data = json.loads(_ok("invariants", "--nodes", "1", "--defect", "0", "--timestamps", "--json"))
        assert "timestamp" in data

    def test_out_flag(self, tmp_path):
        target = tmp_path / "report.json"
        res = run(["invariants", "--nodes", "16", "--defect", "1", "--json", "--out", str(target)])
        assert res.code == 0 and res.output == ""
        assert json.loads(target.read_text())["results"]["chi"] == -24


class TestCommands:
    def test_defect_grid(self):
        out = _ok("defect", "--degree", "3", "--points", "grid9.pts")
        assert "defect: 1\n" in out and "rank: 8\n" in out and "monomials: 35\n" in out
        data = _json("defect", "--points", "grid9_plane.pts")
        assert data["results"]["defect"] == 1 and data["results"]["monomials"] == 10

    def test_defect_general_points(self):
        data = _json("defect", "--points", "agp_general8.pts")
        assert data["results"]["defect"] == 0 and data["results"]["non_separable"] == []

    def test_invariants(self):
        out = _ok("invariants", "--nodes", "16", "--defect", "1")
        assert "chi: -24\n" in out and "h2_omega1: 15\n" in out
        assert _json("invariants", "--points", "grid9.pts")["results"] == {
            "nodes": 9, "defect": 1, "h11": 2, "h2_omega1": 22, "chi": -38}

    def test_agp(self):
        data = _json("agp", "--points", "agp_collinear4.pts")
        res = data["results"]
        assert res["passed"] is False and res["line_ok"] is False and len(res["witness_line"]) == 4
        assert _json("agp", "--points", "agp_general8.pts")["results"]["passed"] is True
        relaxed = _json("agp", "--points", "grid9.pts", "--max-plane", "9")
        assert relaxed["results"]["passed"] is True and relaxed["inputs"]["max_plane"] == 9

    def test_separator_both_methods(self):
        pts = read_points("agp_general8.pts")
        for method in ("constructive", "oracle"):
            res = _json("separator", "--points", "agp_general8.pts", "--exclude", "2", "--method", method)["results"]
            f = parse_form(res["form"])
            assert f.degree == 3
            assert [f.evaluate(q.coords) == 0 for q in pts] == [i != 2 for i in range(len(pts))]
        res = _json("separator", "--points", "agp_general8.pts", "--exclude", "2")["results"]
        assert res["verified"] is True and res["case"]

    def test_oracle_reports_non_separable(self):
        res = _json("separator", "--points", "grid9.pts", "--exclude", "0", "--method", "oracle")["results"]
        assert res["separable"] is False and res["form"] is None

    def test_family_solve_and_write(self, tmp_path):
        pts_file, spec_file = tmp_path / "nodes.pts", tmp_path / "q.spec"
        data = _json("family", "--spec", "quadric.spec", "--solve",
                     "--write-points", str(pts_file), "--write-spec", str(spec_file))
        assert data["results"]["nodes"] == 12
        assert data["results"]["classification"] == {"node": 12}
        assert len(read_points(str(pts_file))) == 12
        assert read_spec(str(spec_file)).form == read_spec("quadric.spec").form

    def test_family_from_flags(self):
        data = _json("family", "--family", "plane", "--h3", "x^3 + y^3 + z^3 + t^3 + w^3",
                     "--g3", "x*y*z + t^3 - w^3")
        assert data["inputs"]["family"] == "plane" and data["results"]["equation"]
        res = run(["family", "--family", "plane", "--h3", "x^3 + ?", "--g3", "x^3"])
        assert res.code == 2 and "--h3" in res.error and "'?'" in res.error

    def test_scan(self):
        data = _json("scan", "--spec", "burkhardt.spec", "--prime", "13", "--threads", "2")
        assert data["results"]["singular_points"] == 45
        assert data["results"]["classification"] == {"node": 45}
        assert data["results"]["points_enumerated"] == (13**5 - 1) // 12
        assert "singular_points: 0\n" in _ok("scan", "--spec", "fermat.spec", "--prime", "7")

    def test_scan_write_points_round_trip(self, tmp_path):
        target = tmp_path / "sing.pts"
        _ok("scan", "--spec", "burkhardt.spec", "--prime", "7", "--write-points", str(target))
        text = target.read_text()
        assert text.startswith("# field: GF(7)\n")
        pts = read_points(str(target))
        assert len(pts) == 45 and all(P.field == GF(7) for P in pts)

    def test_classify(self):
        res = _json("classify", "--spec", "burkhardt.spec", "--point", "1:1:1:1:1", "--prime", "13")["results"]
        assert res["classification"] == "node" and res["hessian_rank"] == 4
        smooth = _json("classify", "--spec", "fermat.spec", "--point", "1:2:0:0:0", "--prime", "17")["results"]
        assert smooth["classification"] == "smooth"
        res = run(["classify", "--spec", "fermat.spec", "--point", "1:1:1:1"])
        assert res.code == 2 and "--point" in res.error

    def test_verdicts(self):
        res = _json("verdict", "--k2l", "3", "--k2s", "5", "--r", "1")["results"]
        assert res["discriminant"] == [5, 8] and res["twice_canonical_plus_discriminant"] == [1, 2]
        assert res["conclusion"] == "NonRational" and res["proven"] is True
        res = _json("verdict", "--nodes", "16", "--defect", "1", "--standard")["results"]
        assert res["chi"] == -24 and res["conclusion"] == "NonRational"
        data = _json("verdict", "--degree", "5", "--nodes", "15")
        assert data["results"]["proven"] is False and data["assumptions"]
        assert _json("verdict", "--degree", "4", "--nodes", "9", "--plane")["results"]["conclusion"] == "NotQFactorial"


class TestParsing:
    def test_parse_error_names_token(self):
        with pytest.raises(ParseError) as info:
            parse_form("x^2 + 3*y^ + z")
        assert info.value.token
        with pytest.raises(ParseError) as info:
            parse_points("1:0:0\n1:$:0\n")
        assert info.value.token == "$"
        assert "line 2" in str(info.value)

    def test_mixed_lengths_rejected(self):
        with pytest.raises(ParseError):
            parse_points("1:0:0\n1:0:0:0\n")

    def test_field_directive(self):
        pts = parse_points("# field: GF(7)\n1:9:0\n")
        assert pts[0].field == GF(7) and str(pts[0]) == "1:2:0"
        with pytest.raises(ParseError):
            parse_points("# field: GF(8)\n1:0\n")
        with pytest.raises(ParseError):
            parse_points("1:0\n# field: GF(7)\n0:1\n")

    @pytest.mark.parametrize("name", SPECS)
    def test_spec_round_trip(self, name):
        spec = read_spec(name)
        again = parse_spec(format_spec(spec))
        assert again.tag == spec.tag and again.form == spec.form
        assert dict(again.constituents) == dict(spec.constituents)

    @pytest.mark.parametrize("text", ["", "family nothing\n", "x = y\n", "family plane\nh3 x^3\n",
                                      "family plane\nq2 = x^2\n", "family plane\nh3 = x^3\nh3 = y^3\n"])
    def test_bad_specs(self, text):
        with pytest.raises(ParseError):
            parse_spec(text)

    def test_bundled_data_exists(self):
        for name in SPECS:
            assert data_path(name).exists()

    @given(forms(nvars=5, degree=3, field=QQ))
    def test_form_round_trip(self, f: Form):
        from quarticnodes.core.forms import format_form
        assert parse_form(format_form(f)) == f

    @given(st.lists(points(3, QQ), min_size=1, max_size=6))
    def test_points_round_trip_rational(self, pts):
        assert parse_points(format_points(pts)) == list(pts)

    @given(st.lists(points(4, GF(13)), min_size=1, max_size=6))
    def test_points_round_trip_modular(self, pts):
        assert parse_points(format_points(pts)) == list(pts)

    def test_point_file_comments_and_columns(self):
        pts = parse_points("# comment\n\n1:2:3 node\n0:1/2:1  extra words\n")
        assert pts == [ProjectivePoint([1, 2, 3]), ProjectivePoint([0, 1, 2])]
