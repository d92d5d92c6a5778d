"""CLI surface: CSV formats, config handling, exit codes."""

import json

import numpy as np
import pytest

from wsld.cli import main
from wsld.coefficients import lubich_coeffs


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCoeffs:
    def test_csv_matches_library(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--nu", "3", "--alpha", "1.5",
                               "--count", "5")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,l_k"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        np.testing.assert_allclose(values, lubich_coeffs(3, 1.5, 5), rtol=1e-15)

    def test_oracle_flag_agrees(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--nu", "4", "--alpha", "1.8",
                               "--count", "32", "--oracle")
        assert code == 0
        values = [float(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
        np.testing.assert_allclose(values, lubich_coeffs(4, 1.8, 32), atol=1e-10)

    def test_bad_nu_is_config_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["coeffs", "--nu", "7", "--alpha", "1.5", "--count", "4"])
        assert err.value.code == 2


class TestOperator:
    def test_matrix_dimensions(self, capsys):
        code, out, _ = run_cli(capsys, "operator", "--alpha", "1.5", "--nu", "4",
                               "--n", "6")
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()]
        assert len(rows) == 7 and all(len(r) == 7 for r in rows)

    def test_right_side_is_transpose(self, capsys):
        _, out_l, _ = run_cli(capsys, "operator", "--alpha", "1.5", "--nu", "4",
                              "--n", "5", "--side", "left")
        _, out_r, _ = run_cli(capsys, "operator", "--alpha", "1.5", "--nu", "4",
                              "--n", "5", "--side", "right")
        a = np.array([[float(v) for v in line.split(",")]
                      for line in out_l.strip().splitlines()])
        b = np.array([[float(v) for v in line.split(",")]
                      for line in out_r.strip().splitlines()])
        np.testing.assert_array_equal(b, a.T)

    def test_phi_series(self, capsys):
        code, out, _ = run_cli(capsys, "operator", "--alpha", "1.5", "--nu", "3",
                               "--shifts", "1,-1,1,2,1,-1,1,3", "--n", "4", "--phi")
        assert code == 0
        assert out.splitlines()[0] == "k,phi_k"

    def test_malformed_shifts(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["operator", "--alpha", "1.5", "--nu", "3", "--shifts", "1,2,3",
                  "--n", "4"])
        assert err.value.code == 2


class TestSymbol:
    def test_deviation_column_shows_order(self, capsys):
        code, out, _ = run_cli(capsys, "symbol", "--nu", "4", "--alpha", "1.5",
                               "--p", "0", "--z-range", "1e-3,1e-1,12")
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        t = np.array([float(r[0]) for r in rows])
        dev = np.array([float(r[3]) for r in rows])
        slope = np.polyfit(np.log(t), np.log(dev), 1)[0]
        assert slope == pytest.approx(4.0, abs=0.2)

    def test_bad_range(self, capsys):
        code, _, err = run_cli(capsys, "symbol", "--nu", "3", "--alpha", "1.5",
                               "--p", "0", "--z-range", "oops")
        assert code == 2
        assert "z-range" in err


class TestSpectra:
    def test_eigen_probe_negative(self, capsys):
        code, out, _ = run_cli(capsys, "spectra", "--nu", "4", "--eigen",
                               "--alpha", "1.5", "--n", "64")
        assert code == 0
        header, values = out.strip().splitlines()
        assert header == "lambda_min,lambda_max"
        lo, hi = (float(v) for v in values.split(","))
        assert lo < hi < 0

    def test_scan_single_alpha_passes(self, capsys):
        code, out, err = run_cli(capsys, "spectra", "--nu", "3", "--alpha", "1.5")
        assert code == 0
        assert out.splitlines()[0] == "alpha,x,f"
        assert "PASS" in err

    def test_scan_unshifted_fails(self, capsys):
        code, _, err = run_cli(capsys, "spectra", "--nu", "3", "--shifts", "0",
                               "--alpha", "1.5")
        assert code == 1
        assert "FAIL" in err


class TestSolve:
    def test_table2_config(self, capsys, tmp_path):
        config = tmp_path / "problem.json"
        config.write_text(json.dumps({"problem": "table2", "alpha": 1.5,
                                      "Nx": 20}))
        code, out, err = run_cli(capsys, "solve", "--config", str(config))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,u,exact,error"
        assert len(lines) == 22
        assert "max error" in err

    def test_table1_config(self, capsys, tmp_path):
        config = tmp_path / "problem.json"
        config.write_text(json.dumps({"problem": "table1", "alpha": -0.5,
                                      "Nx": 10}))
        code, out, _ = run_cli(capsys, "solve", "--config", str(config))
        assert code == 0
        assert out.splitlines()[0] == "x,u,exact,error"

    def test_custom_config_with_kappa(self, capsys, tmp_path):
        config = tmp_path / "problem.json"
        config.write_text(json.dumps({
            "problem": "custom", "alpha": 1.5, "xL": 0.0, "xR": 2.0, "Nx": 16,
            "T": 0.1, "Nt": 10, "d_plus": "x^alpha", "d_minus": 2.0,
            "source": "table2_forcing", "initial": "table2_initial"}))
        code, out, _ = run_cli(capsys, "solve", "--config", str(config))
        assert code == 0
        assert out.splitlines()[0] == "x,u"

    def test_missing_config_file(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--config", "/nonexistent.json")
        assert code == 2
        assert "cannot read config" in err

    def test_unknown_expression_id(self, capsys, tmp_path):
        config = tmp_path / "problem.json"
        config.write_text(json.dumps({
            "problem": "custom", "alpha": 1.5, "xL": 0.0, "xR": 1.0, "Nx": 8,
            "Nt": 4, "d_plus": "mystery", "d_minus": 1.0}))
        code, _, err = run_cli(capsys, "solve", "--config", str(config))
        assert code == 2

    def test_unknown_problem_kind(self, capsys, tmp_path):
        config = tmp_path / "problem.json"
        config.write_text(json.dumps({"problem": "table9", "alpha": 1.5}))
        code, _, err = run_cli(capsys, "solve", "--config", str(config))
        assert code == 2
        assert "unknown problem kind" in err


class TestConvergence:
    def test_consistency_suite_passes(self, capsys, tmp_path):
        out_path = tmp_path / "report.csv"
        code, _, err = run_cli(capsys, "convergence", "--suite", "consistency",
                               "--out", str(out_path))
        assert code == 0
        assert "consistency: PASS" in err
        text = out_path.read_text()
        assert "h,error,rate" in text
        assert "suite=consistency" in text

    def test_table1_suite_reports_known_reference_noise(self, capsys):
        # the finest alpha=0.5 rows of the frozen reference are noise-bound
        # and do not reproduce; the suite must say so and exit 1
        code, out, err = run_cli(capsys, "convergence", "--suite", "table1",
                                 "--json")
        assert code == 1
        payload = json.loads(out)
        assert payload["passed"] is False
        assert all("alpha=0.5" in f for f in payload["failures"])
        # integral column and coarse rows reproduce cleanly
        assert not any("alpha=-0.5" in f for f in payload["failures"])
