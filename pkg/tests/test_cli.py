import csv
import io
import json
import subprocess
import sys

import pytest

from distspec.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


class TestSpectrum:
    def test_p3_family(self):
        code, rep = run_json("spectrum", "--family", "P:3")
        assert code == 0
        assert rep["summary"]["rho"] == pytest.approx(2.732050808, abs=1e-9)
        assert [r["status"] for r in rep["records"]] == [3, 2, 3]
        assert set(rep) >= {"command", "version", "tolerance", "records", "summary"}

    def test_t_and_saw_agree(self):
        _, a = run_json("spectrum", "--family", "T:7,1,1")
        _, b = run_json("spectrum", "--family", "S:1,1,2")
        assert a["summary"]["rho"] == pytest.approx(b["summary"]["rho"], abs=1e-9)

    def test_file_input(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("# single 3-edge\n3\n0 1 2\n")
        code, rep = run_json("spectrum", str(f))
        assert code == 0 and rep["summary"]["rho"] == pytest.approx(2.0, abs=1e-10)

    def test_malformed_file(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("4\n0 1\n1 two\n")
        code, _ = run("spectrum", str(f))
        assert code == 2
        assert "line 3" in capsys.readouterr().err

    def test_disconnected(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("4\n0 1\n2 3\n")
        assert run("spectrum", str(f))[0] == 2

    def test_needs_one_source(self):
        assert run("spectrum")[0] == 2

    def test_csv(self):
        code, text = run("spectrum", "--family", "P:4", "--csv")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert code == 0 and [int(r["status"]) for r in rows] == [6, 4, 4, 6]

    def test_env_tolerance(self, monkeypatch):
        monkeypatch.setenv("DIST_SPECTRA_TOL", "1e-6")
        _, rep = run_json("spectrum", "--family", "P:5")
        assert rep["tolerance"]["spectral"] == 1e-6
        _, rep = run_json("spectrum", "--family", "P:5", "--tol", "1e-9")
        assert rep["tolerance"]["spectral"] == 1e-9


class TestLemmas:
    def test_rebalance(self):
        code, rep = run_json("lemmas", "--suite", "rebalance", "--nmax", "20")
        assert code == 0
        assert rep["summary"]["fail"] == 0 and rep["summary"]["total"] > 0

    def test_entry_reproducible(self):
        argv = ("lemmas", "--suite", "entry", "--nmax", "6", "--trials", "500", "--seed", "7")
        first, second = run(*argv), run(*argv)
        assert first[0] == 0 and first == second

    def test_unknown_suite(self):
        assert run("lemmas", "--suite", "nonsense")[0] == 2

    def test_family_suite_csv(self):
        code, text = run("lemmas", "--suite", "ordering", "--nmax", "14", "--csv")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert code == 0 and rows and {r["verdict"] for r in rows} == {"pass"}


class TestExtremal:
    @pytest.mark.parametrize("argv", [
        ("--cacti-triangles", "7", "2", "--expect", "S:1,1,2"),
        ("--hypertrees", "9", "3", "--expect", "T:9,1,2"),
        ("--cacti-all", "7", "1", "--expect", "S:0,1,4"),
    ])
    def test_expected_maximisers(self, argv):
        code, rep = run_json("extremal", *argv)
        assert code == 0
        assert rep["summary"]["match"] and rep["summary"]["unique"]
        assert rep["records"][0]["gap"] > 1e-7

    def test_mismatch(self):
        code, rep = run_json("extremal", "--hypertrees", "9", "3", "--expect", "T:9,0,3")
        assert code == 1 and rep["summary"]["match"] is False

    def test_size_cap(self, capsys):
        assert run("extremal", "--cacti-all", "12", "2")[0] == 2
        assert "--unsafe-nmax" in capsys.readouterr().err

    def test_infeasible(self):
        assert run("extremal", "--hypertrees", "7", "4")[0] == 2

    def test_needs_one_class(self):
        assert run("extremal")[0] == 2
        assert run("extremal", "--hypertrees", "5", "1", "--cacti-all", "5", "1")[0] == 2


class TestEnumerate:
    def test_writes_members(self, tmp_path):
        code, rep = run_json("enumerate", "--hypertrees", "6", "1", "--out", str(tmp_path))
        assert code == 0
        files = sorted(tmp_path.iterdir())
        assert len(files) == rep["summary"]["members"] == len(rep["records"])
        code, spec = run_json("spectrum", str(files[0]))
        assert code == 0 and spec["summary"]["n"] == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "distspec", "spectrum", "--family", "P:2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["rho"] == pytest.approx(1.0, abs=1e-10)
