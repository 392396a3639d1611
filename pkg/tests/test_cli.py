import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from stokesrh import cli
from stokesrh.factorization import v_on_cut
from stokesrh.dispersion import find_mu0


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, np.array([[float(v) for v in r] for r in reader])


# --- dispersion --------------------------------------------------------------------

def test_dispersion_table(capsys):
    code, out, _ = run(capsys, "dispersion", "--omega1", "0.3")
    assert code == 0
    header, data = rows(out)
    assert header[:3] == ["mu", "lambda0(mu)", "s(mu)"]
    assert data.shape == (301, 7)
    assert data[0, 0] == 0.0 and data[0, 1] == 1.0
    # lambda0 changes sign between neighbouring nodes bracketing mu0.
    k = np.where(np.diff(np.sign(data[:, 1])) != 0)[0]
    assert len(k) == 1
    assert data[k[0], 0] < find_mu0() < data[k[0] + 1, 0]


def test_numbers_are_full_precision(capsys):
    _, out, _ = run(capsys, "dispersion", "--omega1", "0.3", "--points", "3")
    cell = out.splitlines()[2].split(",")[1]
    assert "e" in cell and len(cell.split("e")[0].split(".")[1]) == 17


def test_dispersion_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["dispersion", "--omega1", "0.3", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_json_format(capsys):
    code, out, _ = run(capsys, "dispersion", "--omega1", "0.3", "--points", "4", "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["columns"][0] == "mu" and len(body["rows"]) == 4


# --- figures -------------------------------------------------------------------------

def test_fig1_matches_library(capsys):
    code, out, _ = run(capsys, "figures", "fig1", "--omega1", "0.3", "--grid-min", "0.1",
                       "--grid-max", "2", "--points", "5")
    assert code == 0
    header, data = rows(out)
    assert header == ["omega1", "mu", "Re V(mu)"]
    lib = v_on_cut(data[:, 1], cli.fz.Factorizer.build(0.3)).real
    assert np.array_equal(data[:, 2], lib)


def test_figure_presets(capsys):
    _, out, _ = run(capsys, "figures", "fig3", "--points", "3")
    _, data = rows(out)
    assert sorted(set(data[:, 0])) == [0.1, 0.3]
    _, out, _ = run(capsys, "figures", "fig2", "--points", "3")
    _, data = rows(out)
    assert sorted(set(data[:, 0])) == [0.1, 0.3, 0.5]


def test_fig5_columns(capsys):
    code, out, _ = run(capsys, "figures", "fig5", "--grid-min", "0.05", "--grid-max", "0.5",
                       "--points", "3")
    assert code == 0
    header, data = rows(out)
    assert header[:3] == ["omega1", "Re eta0(omega1)", "Re eta0 asymptotic"]
    assert np.allclose(data[:, 2], 1 / (2 * np.sqrt(data[:, 0])), rtol=1e-15)


def test_figure_grid_must_be_on_cut(capsys):
    code, _, err = run(capsys, "figures", "fig1", "--grid-min", "0", "--points", "3")
    assert code == 2 and "grid-min" in err


# --- verify --------------------------------------------------------------------------

def test_verify_index_one(capsys):
    code, out, _ = run(capsys, "verify", "--omega1", "0.3")
    assert code == 0
    report = json.loads(out)
    assert report["all_passed"] and report["index"] == 1
    names = [c["identity"] for c in report["checks"]]
    assert "dispersion_factorization" in names and "nonlinear_representation" in names
    assert all(c["status"] == "pass" for c in report["checks"])
    assert list(report["checks"][0]) == ["identity", "grid", "tol", "max_residual", "status"]


def test_verify_index_zero(capsys):
    code, out, _ = run(capsys, "verify", "--omega1", "1.0")
    assert code == 0
    checks = json.loads(out)["checks"]
    skipped = {c["identity"] for c in checks if c["status"] == "skipped (regime)"}
    assert skipped == {"normalization", "nonlinear_representation", "eta0_explicit_vs_newton"}


def test_verify_failing_check_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--omega1", "0.3", "--tol", "1e-20")
    assert code == 1
    assert not json.loads(out)["all_passed"]


def test_verify_guard_band(capsys):
    code, out, err = run(capsys, "verify", "--omega1", "0.733")
    assert code == 2 and out == ""
    assert "within critical guard band" in err


def test_verify_between_zero_crossing_and_critical(capsys):
    code, _, err = run(capsys, "verify", "--omega1", "0.7")
    assert code == 2 and "winds" in err


# --- eta0 / critical ----------------------------------------------------------------

def test_eta0_record(capsys):
    code, out, _ = run(capsys, "eta0", "--omega1", "0.1")
    assert code == 0
    rec = json.loads(out)
    assert list(rec) == ["omega1", "eta0", "asymptotic", "oracle", "max_cross_error"]
    assert rec["max_cross_error"] < 1e-8


def test_eta0_small_frequency(capsys):
    _, out, _ = run(capsys, "eta0", "--omega1", "0.01")
    eta = complex(*json.loads(out)["eta0"])
    assert abs(eta - (5 + 5j)) / abs(5 + 5j) < 0.05


def test_eta0_without_discrete_spectrum(capsys):
    code, out, err = run(capsys, "eta0", "--omega1", "1.0")
    assert code == 2 and out == ""
    assert "N = 2*kappa(G) = 0" in err


def test_critical(capsys):
    code, out, _ = run(capsys, "critical")
    rec = json.loads(out)
    assert code == 0
    assert rec["critical_frequency"] == pytest.approx(0.733, abs=2e-3)
    assert rec["zero_crossing_frequency"] < rec["critical_frequency"]


# --- configuration errors ----------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["dispersion"],
    ["dispersion", "--omega1", "0.3", "--grid-min", "2", "--grid-max", "1"],
    ["dispersion", "--omega1", "0.3", "--points", "1"],
    ["dispersion", "--omega1", "-1"],
    ["verify", "--omega1", "0.3", "--tol", "0"],
])
def test_config_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("stokesrh: error:")


def test_no_partial_output_on_error(tmp_path):
    out = tmp_path / "x.csv"
    assert cli.main(["figures", "fig1", "--grid-min", "0", "--out", str(out)]) == 2
    assert not out.exists()


def test_numerical_failure_exit_code(capsys):
    # The default angle grid cannot resolve the phase this close to the zero crossing.
    code, _, err = run(capsys, "verify", "--omega1", "0.695")
    assert code == 3 and "numerical failure" in err


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "stokesrh.cli", "critical"],
                         capture_output=True, text=True, check=True)
    assert "critical_frequency" in res.stdout
