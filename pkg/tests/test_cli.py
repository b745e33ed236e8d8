import json
import os

import pytest

from patchlab.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


class TestObjectCommands:
    def test_build_polytope(self, tmp_report):
        assert main(["build-polytope", "--family", "cube(2,3)",
                     "--report", tmp_report]) == 0
        doc = read_json(tmp_report)
        assert doc["family"] == "cube(2,3)"
        assert len(doc["vertices"]) == 4

    def test_triangulate_viro(self, tmp_report):
        assert main(["triangulate", "--viro", "2", "2",
                     "--report", tmp_report]) == 0
        doc = read_json(tmp_report)
        assert doc["stats"]["maximal_simplices"] == 4
        assert doc["stats"]["n"] == 2

    def test_triangulate_family_string(self, tmp_report):
        assert main(["triangulate", "--family", "viro(2,3)",
                     "--report", tmp_report]) == 0
        assert read_json(tmp_report)["stats"]["maximal_simplices"] == 9

    def test_missing_source_errors(self):
        with pytest.raises(SystemExit):
            main(["triangulate"])


class TestAnalyze:
    def test_report_contents(self, tmp_report):
        assert main(["analyze", "--viro", "2", "3", "--signs", "harnack",
                     "--report", tmp_report]) == 0
        doc = read_json(tmp_report)
        assert doc["betti"] == {"rx": [2, 2], "rp": [1, 1, 1]}
        assert doc["invariants"]["ell"] == 1
        assert doc["counterexample"] is False
        assert any(p["r"] == 1 for p in doc["pages"])

    def test_deterministic_output(self, tmp_path):
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        argv = ["analyze", "--viro", "2", "2", "--signs", "seed:5",
                "--side", "both"]
        assert main(argv + ["--report", a]) == 0
        assert main(argv + ["--report", b]) == 0
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_signs_from_file(self, tmp_report):
        assert main(["analyze",
                     "--triangulation", os.path.join(DATA, "fig_torus.json"),
                     "--signs", os.path.join(DATA, "fig_torus_signs.json"),
                     "--report", tmp_report]) == 0
        doc = read_json(tmp_report)
        assert doc["betti"]["rx"] == [2, 2]


class TestVerify:
    def test_prints_verdicts(self, capsys, tmp_report):
        assert main(["verify", "--viro", "2", "3", "--signs", "harnack",
                     "--report", tmp_report]) == 0
        out = capsys.readouterr().out
        lines = [l for l in out.splitlines() if l]
        assert any(l.startswith("PASS e1_tropical") for l in lines)
        assert not any(l.startswith("FAIL") for l in lines)
        assert any(l.startswith("SKIP mod4_congruence") for l in lines)
        assert read_json(tmp_report)["counterexample"] is False


class TestPagesAndSweep:
    def test_pages_cohomology(self, tmp_report):
        assert main(["pages", "--viro", "2", "2", "--signs", "seed:1",
                     "--side", "cohomology", "--report", tmp_report]) == 0
        doc = read_json(tmp_report)
        assert all(p["side"] == "cohomology" for p in doc["pages"])

    def test_sweep_serial_matches_parallel(self, tmp_path):
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        argv = ["sweep", "--viro", "2", "2", "--random", "4", "--seed", "3"]
        assert main(argv + ["--jobs", "1", "--report", a]) == 0
        assert main(argv + ["--jobs", "2", "--report", b]) == 0
        da, db = read_json(a), read_json(b)
        assert da == db
        assert [r["seed"] for r in da["records"]] == [3, 4, 5, 6]
        assert da["counterexample"] is False
