import json
import subprocess
import sys

import pytest

from vertexnet import verify
from vertexnet.cli import build_report, main, parse_n_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenerate:
    def test_standard_params(self, capsys):
        code, out, _ = run(capsys, "generate", "--n", "3", "--seed", "7", "--kind", "standard-params")
        data = json.loads(out)
        assert code == 0 and data["n"] == 3 and len(data["r"]) == 3
        for value in data["r"].values():
            num, _, den = value.partition("/")
            assert 1 <= int(num) <= 100 and 1 <= int(den or 1) <= 100

    def test_deterministic(self, capsys):
        first = run(capsys, "generate", "--n", "5", "--seed", "2")[1]
        assert run(capsys, "generate", "--n", "5", "--seed", "2")[1] == first
        assert run(capsys, "generate", "--n", "5", "--seed", "3")[1] != first

    def test_network(self, capsys):
        code, out, _ = run(capsys, "generate", "--n", "4", "--seed", "1", "--kind", "network")
        assert code == 0 and json.loads(out)["n_boundary"] == 4

    def test_bad_n(self, capsys):
        assert run(capsys, "generate", "--n", "1")[0] == 2

    def test_bad_kind(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--n", "3", "--kind", "graph"])
        assert exc.value.code == 2


class TestVerify:
    def test_eq_sp_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--statement", "eq-sp", "--n", "6", "--draws", "20")
        report = json.loads(out)
        assert code == 0 and report["verdict"] == "pass" and report["draws"] == 20
        assert "elapsed" not in report

    def test_minor_count_logged(self, capsys):
        code, out, _ = run(capsys, "verify", "--statement", "lemma-vertextheor", "--n", "5")
        report = json.loads(out)
        assert report["verdict"] == "pass" and report["details"]["minors_per_draw"] == 69

    def test_even_nonneg_informational(self, capsys):
        code, out, _ = run(capsys, "verify", "--statement", "theorem-nonneg", "--n", "4")
        report = json.loads(out)
        assert code == 0 and report["verdict"] == "informational" and not report["gating"]

    def test_unknown_statement(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--statement", "lemma-nope", "--n", "3"])
        assert exc.value.code == 2

    def test_size_guard(self, capsys):
        code, _, err = run(capsys, "verify", "--statement", "minor-identity", "--n", "9")
        assert code == 2 and "size error" in err

    def test_timing_flag(self, capsys):
        _, out, _ = run(capsys, "verify", "--statement", "restriction", "--n", "3", "--timing")
        assert isinstance(json.loads(out)["elapsed"], float)

    def test_byte_identical(self, capsys):
        argv = ("verify", "--statement", "theorem-lagr", "--n", "5", "--seed", "11", "--draws", "4")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_all_is_json_lines(self, capsys):
        code, out, _ = run(capsys, "verify", "--statement", "all", "--n", "3", "--draws", "2")
        lines = [json.loads(line) for line in out.splitlines()]
        assert code == 0
        assert [r["statement"] for r in lines] == verify.applicable(3)

    def test_table(self, capsys):
        _, out, _ = run(capsys, "verify", "--statement", "isotropy", "--n", "3", "--format", "table")
        assert out.splitlines()[0].split() == ["statement", "n", "draws", "verdict", "gating", "witness"]

    def test_generate_then_verify(self, capsys, tmp_path):
        params = tmp_path / "p.json"
        params.write_text(run(capsys, "generate", "--n", "4", "--seed", "1")[1])
        argv = ("verify", "--statement", "all", "--n", "4", "--params", str(params))
        code, first, _ = run(capsys, *argv)
        assert code == 0
        assert run(capsys, *argv)[1] == first
        reports = [json.loads(line) for line in first.splitlines()]
        assert all(r["draws"] == 1 for r in reports)
        assert "lemma-w1w2" in {r["statement"] for r in reports}

    def test_params_size_mismatch(self, capsys, tmp_path):
        params = tmp_path / "p.json"
        params.write_text(run(capsys, "generate", "--n", "3")[1])
        assert run(capsys, "verify", "--statement", "eq-sp", "--n", "4", "--params", str(params))[0] == 2

    def test_failure_exit_code(self, capsys, monkeypatch):
        st = verify.STATEMENTS["restriction"]
        broken = verify.Statement(
            st.id, st.anchor, st.n_min, st.n_max, st.default_draws,
            lambda n, seed, draws: verify.Outcome(verify.FAIL), st.draw_kind,
        )
        monkeypatch.setitem(verify.STATEMENTS, "restriction", broken)
        code, out, _ = run(capsys, "verify", "--statement", "restriction", "--n", "3")
        report = json.loads(out)
        assert code == 1 and report["verdict"] == "fail" and report["witness"] is not None


class TestReport:
    def test_parse_range(self):
        assert parse_n_range("3..7") == [3, 4, 5, 6, 7]
        assert parse_n_range("4") == [4]

    def test_report_rows_and_calibration(self):
        report = build_report([3, 4, 5], seed=0, draws=2)
        gating_nonneg = [r["n"] for r in report["rows"] if r["statement"] == "theorem-nonneg" and r["gating"]]
        assert gating_nonneg == [3, 5]
        assert [c["n"] for c in report["calibration"]] == [3, 4]
        assert report["summary"]["ok"]
        keys = [(r["n"], r["statement"]) for r in report["rows"]]
        assert keys == [(n, s) for n in (3, 4, 5) for s in verify.applicable(n)]

    def test_report_deterministic(self, capsys):
        argv = ("report", "--n", "2..3", "--draws", "2", "--format", "json")
        code, first, _ = run(capsys, *argv)
        assert code == 0
        assert run(capsys, *argv)[1] == first

    def test_report_table(self, capsys):
        code, out, _ = run(capsys, "report", "--n", "3", "--draws", "2")
        assert code == 0
        assert "calibration n=3: 2 passing, chosen S^T on triangle" in out
        assert out.rstrip().endswith("summary: ok")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "vertexnet", "verify", "--statement", "eq-sp", "--n", "3", "--draws", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "pass"
