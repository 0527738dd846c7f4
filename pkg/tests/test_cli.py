import subprocess
import sys

import pytest

from wafomkit.cli import EXIT_BUDGET, EXIT_PARSE, EXIT_USAGE, main
from wafomkit.experiment import CSV_HEADER
from wafomkit.gf2 import BitMatrix
from wafomkit.net import NetParams, read_net, write_net


def parse_report(text):
    return dict(line.split(" ", 1) for line in text.strip().splitlines() if " " in line)


class TestGen:
    def test_writes_parseable_net(self, tmp_path):
        out = tmp_path / "net.txt"
        assert main(["gen", "--s", "2", "--n", "8", "--m", "4", "--seed", "7", "--out", str(out)]) == 0
        net = read_net(out)
        assert (net.s, net.n, net.m) == (2, 8, 4)

    def test_n_below_m(self, tmp_path):
        assert main(["gen", "--s", "2", "--n", "3", "--m", "4", "--seed", "7",
                     "--out", str(tmp_path / "x")]) == EXIT_USAGE

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            main(["gen", "--s", "3", "--n", "10", "--m", "5", "--seed", "11", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()

    def test_missing_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--s", "2"])
        assert exc.value.code == EXIT_USAGE


class TestEval:
    def test_half_net(self, tmp_path, capsys):
        path = tmp_path / "half.txt"
        path.write_text("1 2 1\n1\n0\n")
        assert main(["eval", "--net", str(path), "--u-all", "2"]) == 0
        rep = parse_report(capsys.readouterr().out)
        assert float(rep["wafom"]) == pytest.approx(0.25, abs=1e-15)
        assert float(rep["err_exp"]) == pytest.approx(0.2516073, abs=1e-7)
        assert float(rep["A"]) == pytest.approx(0.432, abs=1e-3)
        assert float(rep["B"]) == pytest.approx(0.388, abs=1e-3)
        assert float(rep["ratio"]) == pytest.approx(0.2516073 / 0.25, abs=1e-6)

    def test_methods_agree(self, tmp_path, capsys):
        path = tmp_path / "net.txt"
        main(["gen", "--s", "3", "--n", "6", "--m", "4", "--seed", "2", "--out", str(path)])
        values = {}
        for method in ("naive", "lookup", "dual"):
            assert main(["eval", "--net", str(path), "--u", "0.5,2,3", "--method", method]) == 0
            values[method] = float(parse_report(capsys.readouterr().out)["wafom"])
        assert abs(values["naive"] - values["lookup"]) <= 1e-10 * values["naive"]
        assert abs(values["naive"] - values["dual"]) <= 1e-12

    def test_bad_file(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 2 1\n1\n")
        assert main(["eval", "--net", str(path)]) == EXIT_PARSE
        assert main(["eval", "--net", str(tmp_path / "absent")]) == EXIT_PARSE

    def test_dual_budget(self, tmp_path):
        path = tmp_path / "big.txt"
        write_net(NetParams(4, 8, 1, (BitMatrix.zeros(8, 1),) * 4), path)
        assert main(["eval", "--net", str(path), "--method", "dual"]) == EXIT_BUDGET

    def test_wrong_weight_count(self, tmp_path):
        path = tmp_path / "half.txt"
        path.write_text("1 2 1\n1\n0\n")
        assert main(["eval", "--net", str(path), "--u", "1,2"]) == EXIT_USAGE


class TestExperiment:
    def test_csv_and_summary(self, tmp_path, capsys):
        out = tmp_path / "exp.csv"
        args = ["experiment", "--s", "2", "--m", "6", "--q", "16", "--seed", "1", "--out", str(out)]
        assert main(args) == 0
        rep = parse_report(capsys.readouterr().out)
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CSV_HEADER) and len(lines) == 17
        assert rep["inside_bounds"] == f"{rep['defined_ratios']}/{rep['defined_ratios']}"
        first = out.read_bytes()
        main(args)
        assert out.read_bytes() == first

    def test_single_row(self, tmp_path):
        out = tmp_path / "one.csv"
        assert main(["experiment", "--s", "2", "--m", "4", "--q", "1", "--seed", "0", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 2


class TestSearch:
    def test_both_criteria(self, tmp_path, capsys):
        for criterion in ("wafom", "err"):
            out = tmp_path / f"{criterion}.txt"
            assert main(["search", "--s", "2", "--m", "5", "--n", "16", "--q", "32", "--seed", "4",
                         "--criterion", criterion, "--out", str(out)]) == 0
            rep = parse_report(capsys.readouterr().out)
            key = "wafom" if criterion == "wafom" else "err_exp"
            assert float(rep["score"]) == float(rep[key])
            assert read_net(out).s == 2


class TestBench:
    def test_shape(self, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        assert main(["bench", "--s-list", "2,4,8,16", "--m", "6", "--q", "2", "--out", str(out)]) == 0
        text = capsys.readouterr().out
        for evaluator in ("wafom_naive", "wafom_lookup", "err_exp"):
            assert sum(evaluator in line for line in text.splitlines()) == 4
        rows = out.read_text().splitlines()
        assert len(rows) == 1 + 12
        assert all(float(r.split(",")[-1]) > 0 for r in rows[1:])


def test_console_entry_point(tmp_path):
    out = tmp_path / "n.txt"
    proc = subprocess.run([sys.executable, "-m", "wafomkit.cli", "gen", "--s", "1", "--n", "4",
                           "--m", "2", "--seed", "3", "--out", str(out)], capture_output=True)
    assert proc.returncode == 0
    assert out.read_text().startswith("1 4 2\n")
