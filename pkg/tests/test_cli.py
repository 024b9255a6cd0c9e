"""
End-to-end tests for the command-line interface in main.py.
"""
import csv
import io
import json
import logging

import pytest

import main
from ellipse.exceptions import CholeskyFailure
from ellipse.state import CheckResult

pytestmark = pytest.mark.integration


@pytest.fixture(autouse=True)
def restore_root_logging():
    """main() reconfigures the root logger; put pytest's handlers back afterwards."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpectrum:
    def test_per_class_table(self, capsys, printed):
        code, out, _ = run(capsys, "spectrum", "--model", "m1", "--xi", "1", "--class", "pm", "--size", "10", "--levels", "4")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].split() == ["energy", "class", "d2_label", "c2v_label", "n", "level_index", "degenerate_with"]
        energies = [float(line.split()[0]) for line in lines[1:]]
        for energy, entry in zip(energies, ["0.6762823414", "6.086541072", "16.90705853", "33.13783472"]):
            assert printed(energy, entry)
        assert all("(+,-)" in line and "B2" in line for line in lines[1:])

    def test_circle(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--model", "m1", "--xi", "0", "--class", "pp", "--size", "6", "--levels", "3")
        assert code == 0
        assert [line.split()[0] for line in out.splitlines()[1:]] == ["0", "4", "16"]

    def test_merged_model2_json(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--model", "m2", "--xi", "1", "--class", "all", "--size", "14", "--levels", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["meta"]["command"] == "spectrum"
        assert payload["meta"]["size"] == 14
        assert "spectral_rtol" in payload["meta"]["tolerances"]
        energies = [record["energy"] for record in payload["data"]]
        assert energies == sorted(energies)
        assert {record["symmetry"] for record in payload["data"]} == {"pp", "pm", "mp", "mm"}
        assert all(record["degenerate_with"] is None for record in payload["data"])

    def test_output_is_byte_stable(self, capsys):
        argv = ("spectrum", "--model", "m2", "--xi", "0.5", "--class", "mm", "--size", "8", "--levels", "2")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second


class TestConverge:
    def test_circle_rows_are_constant(self, capsys):
        code, out, _ = run(capsys, "converge", "--model", "m2", "--xi", "0", "--class", "mm", "--n-min", "4", "--n-max", "6", "--levels", "2")
        assert code == 0
        assert out.splitlines()[0].split() == ["N", "E0", "E1"]
        assert [line.split() for line in out.splitlines()[1:]] == [["4", "1", "9"], ["5", "1", "9"], ["6", "1", "9"]]

    def test_json_round_trips(self, capsys):
        code, out, _ = run(capsys, "converge", "--model", "m1", "--xi", "1", "--class", "mp", "--n-min", "5", "--n-max", "6", "--levels", "2", "--format", "json")
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out


class TestPerturbationSeries:
    def test_model1_series(self, capsys):
        code, out, _ = run(capsys, "pt", "--model", "m1", "--level", "3", "--order", "4")
        assert code == 0
        coefficients = [line.split()[1] for line in out.splitlines()[1:]]
        assert coefficients == ["9", "-9/2", "81/32", "-99/64", "8253/8192"]

    def test_model2_series_with_class(self, capsys):
        code, out, _ = run(capsys, "pt", "--model", "m2", "--level", "4", "--class", "mp", "--order", "4", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["order", "coefficient", "approximation"]
        assert [row[1] for row in rows[1:]] == ["16", "-8", "68/15", "-14/5", "6628/3375"]

    def test_ground_level(self, capsys):
        code, out, _ = run(capsys, "pt", "--model", "m1", "--level", "0", "--order", "4")
        assert code == 0
        assert [line.split()[1] for line in out.splitlines()[1:]] == ["0"] * 5

    def test_model2_needs_class(self, capsys):
        code, out, err = run(capsys, "pt", "--model", "m2", "--level", "1", "--order", "4")
        assert code == 1
        assert out == ""
        assert "--class" in err

    def test_incompatible_class(self, capsys):
        code, out, _ = run(capsys, "pt", "--model", "m1", "--level", "3", "--class", "pp")
        assert code == 1
        assert out == ""


class TestScan:
    ARGS = ("scan", "--model", "m1", "--xi-min", "-0.5", "--xi-max", "0.5", "--steps", "3", "--size", "8", "--levels", "2")

    def test_csv_layout(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == main.SCAN_HEADER
        assert float(rows[1][0]) == -0.5 and float(rows[-1][0]) == 0.5
        assert all(row[-1] == "" for row in rows[1:]), "No order-4 series for PathNonHermitian"
        assert "\r" not in out

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "figure.csv"
        code, out, _ = run(capsys, *self.ARGS, "--out", str(target))
        assert code == 0
        written = target.read_text(encoding="utf-8")
        assert written.splitlines()[0] == ",".join(main.SCAN_HEADER)
        assert len(written.splitlines()) == 1 + 3 * 4
        assert out.splitlines()[0].split() == main.SCAN_HEADER

    def test_unwritable_out(self, capsys, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        code, out, _ = run(capsys, *self.ARGS, "--out", str(blocker / "figure.csv"))
        assert code == 1
        assert out == ""


class TestCheck:
    def test_splitting_suite(self, capsys):
        code, out, _ = run(capsys, "check", "--suite", "splitting")
        assert code == 0
        assert out.count("PASS") == 6
        assert "FAIL" not in out

    def test_failed_check_exits_two(self, capsys, monkeypatch):
        monkeypatch.setattr(main, "run_suite", lambda name, xi, size: [CheckResult("hft", "forced", 1.0, 0.5, False)])
        code, out, _ = run(capsys, "check", "--suite", "hft")
        assert code == 2
        assert "FAIL" in out


class TestErrors:
    def test_unknown_flag(self, capsys):
        code, out, err = run(capsys, "spectrum", "--model", "m1", "--xi", "1", "--bogus")
        assert code == 1
        assert out == ""
        assert "usage" in err

    def test_missing_command(self, capsys):
        code, out, _ = run(capsys)
        assert code == 1
        assert out == ""

    def test_xi_outside_domain(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--model", "m1", "--xi", "-1")
        assert code == 1
        assert out == ""

    def test_size_too_small_for_levels(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--model", "m2", "--xi", "1", "--class", "pp", "--size", "3", "--levels", "4")
        assert code == 1
        assert out == ""

    def test_huge_xi_runs_at_the_node_cap(self, capsys):
        code, out, err = run(capsys, "spectrum", "--model", "m2", "--xi", "1e17", "--class", "pp", "--size", "2", "--levels", "1")
        assert code == 0
        assert out.splitlines()[0].split()[0] == "energy"
        assert "capped" in err

    def test_numerical_failure_exits_two(self, capsys, monkeypatch):
        def fail(*args, **kwargs):
            raise CholeskyFailure("overlap not positive definite", size=8, xi=1.0)

        monkeypatch.setattr(main, "solve_block", fail)
        code, out, err = run(capsys, "spectrum", "--model", "m2", "--xi", "1", "--class", "pp", "--size", "8")
        assert code == 2
        assert out == ""
        assert "overlap not positive definite" in err

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0
        assert out.strip() == main.config.APP_VERSION
