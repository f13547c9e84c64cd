"""Command-line surface: formats, exit codes, determinism."""

import json
import math

import pytest

from nlosc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPoly:
    def test_json_matches_published_row(self, capsys):
        code, out, _ = run(capsys, "poly", "--n", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["coefficients"] == {"0": "1", "2": "-4", "4": "-4"}
        assert payload["hermite"] == {"0": "-4", "2": "-4", "4": "-1/4"}
        assert payload["script_p"] == {"0": "-4", "2": "16", "4": "16"}
        assert payload["proportionality"] == "-4"
        assert payload["energy"] == "5/2"
        assert payload["norm_squared"] == {"sqrt_pi_coefficient": "64"}

    def test_ground_level(self, capsys):
        code, out, _ = run(capsys, "poly", "--n", "0")
        assert code == 0
        payload = json.loads(out)
        assert payload["coefficients"] == {"0": "1"}
        assert payload["energy"] == "-3/2"

    def test_missing_levels_exit_two(self, capsys):
        for n in ("1", "2"):
            code, out, err = run(capsys, "poly", "--n", n)
            assert code == 2
            assert "no polynomial solution" in err

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "poly", "--n", "4", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "component,degree,value"
        assert "P,2,-4" in lines
        assert "hermite,4,-0.25" in lines

    def test_latex_table_keeps_exact_rationals(self, capsys):
        code, out, _ = run(capsys, "poly", "--n", "4", "--format", "latex-table")
        assert code == 0
        assert "-1/4" in out
        assert out.startswith(r"\begin{tabular}")

    def test_determinism(self, capsys):
        _, first, _ = run(capsys, "poly", "--n", "7")
        _, second, _ = run(capsys, "poly", "--n", "7")
        assert first == second


class TestVerify:
    def test_small_run(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "3")
        assert code == 0
        report = json.loads(out)
        assert report["total"] == 4
        assert report["failed"] == 0

    def test_count_through_twelve(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "12")
        assert code == 0
        report = json.loads(out)
        assert report["total"] == 40
        assert report["passed"] == 40
        families = {c["family"] for c in report["checks"]}
        assert families == {
            "derivative", "proposition", "rodrigues", "schrodinger"
        }

    def test_max_n_validation(self, capsys):
        code, _, err = run(capsys, "verify", "--max-n", "2")
        assert code == 2
        assert "max-n" in err


class TestSpectrum:
    def test_harmonic_json(self, capsys):
        code, out, _ = run(
            capsys,
            "spectrum", "--potential", "harmonic", "--omega", "1",
            "--levels", "3", "--points", "1000",
        )
        assert code == 0
        rows = json.loads(out)
        assert [r["level"] for r in rows] == [0, 1, 2]
        for i, row in enumerate(rows):
            assert row["energy"] == pytest.approx(i + 0.5, abs=1e-6)
            assert row["nodes"] == i
            assert row["abs_error"] < 1e-6

    def test_nonlinear_defaults(self, capsys):
        code, out, _ = run(
            capsys, "spectrum", "--levels", "4", "--points", "1000"
        )
        assert code == 0
        rows = json.loads(out)
        energies = [r["energy"] for r in rows]
        assert energies == pytest.approx([-1.5, 1.5, 2.5, 3.5], abs=1e-5)

    def test_isotonic(self, capsys):
        code, out, _ = run(
            capsys,
            "spectrum", "--potential", "isotonic", "--m", "1",
            "--levels", "3", "--points", "1000",
        )
        assert code == 0
        rows = json.loads(out)
        energies = [r["energy"] for r in rows]
        assert energies == pytest.approx([2.5, 4.5, 6.5], abs=1e-4)

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys,
            "spectrum", "--potential", "harmonic", "--levels", "2",
            "--points", "1000", "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "level,energy,nodes,analytic_target,abs_error"
        assert len(lines) == 3

    def test_eigenvector_dump(self, capsys):
        code, out, _ = run(
            capsys,
            "spectrum", "--potential", "harmonic", "--levels", "1",
            "--points", "1000", "--eigenvector", "0",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,psi"
        assert len(lines) == 2000  # fine grid has 2N - 1 interior points

    def test_bad_flags_exit_two(self, capsys):
        code, _, err = run(
            capsys, "spectrum", "--a2", "-1", "--points", "1000"
        )
        assert code == 2
        assert "a2" in err
        code, _, err = run(capsys, "spectrum", "--points", "100")
        assert code == 2

    def test_raw_skips_extrapolation(self, capsys):
        code, out, _ = run(
            capsys,
            "spectrum", "--potential", "harmonic", "--levels", "1",
            "--points", "1000", "--raw",
        )
        assert code == 0
        row = json.loads(out)[0]
        # single-grid energy carries the h^2 discretization error
        assert 1e-6 < row["abs_error"] < 1e-3


class TestFigure:
    def test_figure1_row_at_origin(self, capsys):
        code, out, _ = run(capsys, "figure", "--id", "1", "--samples", "3")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,nonlinear_potential,harmonic_potential"
        mid = lines[2].split(",")
        assert float(mid[0]) == 0.0
        assert float(mid[1]) == pytest.approx(-4.0)
        assert float(mid[2]) == 0.0

    def test_figure3_row_at_origin(self, capsys):
        code, out, _ = run(capsys, "figure", "--id", "3", "--samples", "3")
        lines = out.strip().splitlines()
        mid = lines[2].split(",")
        assert float(mid[1]) == pytest.approx(
            math.sqrt(2 / math.sqrt(math.pi)), rel=1e-12
        )
        assert float(mid[2]) == pytest.approx(math.pi ** (-0.25), rel=1e-12)

    def test_figure4_odd_functions_vanish_at_origin(self, capsys):
        code, out, _ = run(capsys, "figure", "--id", "4", "--samples", "3")
        mid = out.strip().splitlines()[2].split(",")
        assert float(mid[1]) == 0.0
        assert float(mid[2]) == 0.0

    def test_figure2a_columns(self, capsys):
        code, out, _ = run(capsys, "figure", "--id", "2a", "--samples", "5")
        lines = out.strip().splitlines()
        assert lines[0] == "x,scriptP3,scriptP4"
        # scriptP4(0) = -4
        mid = lines[3].split(",")
        assert float(mid[2]) == pytest.approx(-4.0)

    def test_default_sampling(self, capsys):
        code, out, _ = run(capsys, "figure", "--id", "2b")
        lines = out.strip().splitlines()
        assert len(lines) == 802  # header + 801 samples
        assert lines[1].split(",")[0] == "-4"

    def test_unknown_id_exit_two(self, capsys):
        code, _, err = run(capsys, "figure", "--id", "7")
        assert code == 2
        assert "unknown figure id" in err

    def test_csv_round_trips_through_reevaluation(self, capsys):
        # re-evaluating the analytic curves at the parsed x reproduces the
        # printed values to the printed (15 significant digit) precision;
        # the parsed x itself is only 15-digit faithful, hence the 1e-12
        from nlosc import harmonic_wavefunction, wavefunction

        _, out, _ = run(capsys, "figure", "--id", "3", "--samples", "41")
        for line in out.strip().splitlines()[1:]:
            x_str, psi_str, phi_str = line.split(",")
            x = float(x_str)
            assert wavefunction(0, x) == pytest.approx(
                float(psi_str), rel=1e-12
            )
            assert harmonic_wavefunction(0, x) == pytest.approx(
                float(phi_str), rel=1e-12
            )


class TestOrthogonality:
    def test_small_matrix_passes(self, capsys):
        code, out, err = run(
            capsys, "orthogonality", "--max-n", "5", "--tol", "1e-9"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,0,3,4,5"
        diag = [float(lines[i + 1].split(",")[i + 1]) for i in range(4)]
        assert diag[0] == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-9)
        assert diag[1] == pytest.approx(24 * math.sqrt(math.pi), rel=1e-9)

    def test_impossible_tolerance_fails(self, capsys):
        code, _, err = run(
            capsys, "orthogonality", "--max-n", "6", "--tol", "1e-17"
        )
        assert code == 1
        assert "FAILED" in err


class TestGround:
    def test_solved_point(self, capsys):
        code, out, _ = run(
            capsys,
            "ground", "--omega", "1", "--a", str(math.sqrt(0.5)),
            "--points", "1000",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["analytic_energy"] == pytest.approx(-1.5)
        assert payload["energy"] == pytest.approx(-1.5, abs=1e-5)
        assert payload["nodes"] == 0
        assert payload["abs_error"] < 1e-5

    def test_invalid_a(self, capsys):
        code, _, err = run(capsys, "ground", "--a", "-1")
        assert code == 2


class TestClassical:
    def test_csv_and_period(self, capsys):
        code, out, err = run(
            capsys,
            "classical", "--omega", "1", "--amplitude", "2", "--g", "1",
            "--tmax", str(4 * math.pi),
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,x,v,energy"
        first = lines[1].split(",")
        assert float(first[1]) == pytest.approx(0.5)  # x(0) = 1/2
        assert "measured period" in err
        measured = float(err.split("measured period:")[1].split("(")[0])
        assert measured == pytest.approx(math.pi, abs=1e-6)

    def test_invalid_parameters_exit_two(self, capsys):
        code, _, err = run(
            capsys, "classical", "--amplitude", "0.5", "--g", "1"
        )
        assert code == 2

    def test_determinism(self, capsys):
        args = ("classical", "--tmax", "3")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second


class TestUsage:
    def test_no_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2
