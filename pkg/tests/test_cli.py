import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from resonant.cli import build_parser, main
from resonant.harness import fit_slope


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_convergence_lie_slope(capsys):
    code, out, err = run(["convergence", "--scheme", "lie", "--data", "two_mode:1:1:0.5:2",
                          "--tau-max", "0.0625", "--tau-min", "0.001", "--t-end", "1", "--n-modes", "128"],
                         capsys)
    assert code == 0
    data = rows(out)
    assert len(data) == 6
    slope, _ = fit_slope([(float(r["tau"]), float(r["l2_error"])) for r in data if r["retained"] == "1"])
    assert slope == pytest.approx(1.0, abs=0.1)
    assert "lie: slope 1.0" in err


def test_run_zero_amplitude(capsys):
    code, out, _ = run(["run", "--scheme", "res1", "--data", "plane_wave:0:0", "--n-modes", "16",
                        "--tau", "0.1"], capsys)
    assert code == 0
    data = rows(out)
    assert len(data) == 16
    assert all(float(r["re"]) == 0 and float(r["im"]) == 0 for r in data)


def test_run_plane_wave(capsys):
    code, out, _ = run(["run", "--scheme", "strang", "--data", "plane_wave:0.5:2", "--n-modes", "16",
                        "--tau", "0.125", "--t-end", "1"], capsys)
    assert code == 0
    data = rows(out)
    x = np.array([float(r["x"]) for r in data])
    z = np.array([float(r["re"]) + 1j * float(r["im"]) for r in data])
    assert np.allclose(z, 0.5 * np.exp(1j * (2 * x - (4 + 0.25))), atol=1e-13)


@pytest.mark.parametrize("argv", [
    ["run", "--scheme", "rk4"],
    ["convergence", "--scheme", "bogus"],
])
def test_unknown_scheme(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert "valid schemes: lie, strang, exp1, res1, res2, filtered_lie, general_res1" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["run", "--data", "rough:x"],
    ["run", "--n-modes", "7"],
    ["run", "--scheme", "res1", "--equation", "heat_cubic"],
    ["run", "--equation", "ginzburg_landau", "--eq-param", "alpha=-1"],
    ["run", "--eq-param", "nokey"],
    ["run", "--scheme", "filtered_lie", "--n-modes", "16", "--tau", "0.0001"],
    ["convergence", "--tau-max", "0.01", "--tau-min", "0.1"],
    ["convergence", "--ref-factor", "4"],
    ["run", "--config", "/nonexistent/file.cfg"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert "error" in err


def test_blow_up_exit_2(capsys):
    code, _, err = run(["run", "--scheme", "exp1", "--data", "plane_wave:10:0", "--n-modes", "16",
                        "--tau", "1", "--t-end", "100"], capsys)
    assert code == 2
    assert "non-finite values at step" in err


def test_reference_mismatch_exit_2(capsys):
    code, _, err = run(["convergence", "--scheme", "lie", "--data", "rough:1:0", "--n-modes", "256",
                        "--tau-max", "0.015625", "--tau-min", "0.00390625", "--ref-factor", "16"], capsys)
    assert code == 2
    assert "reference solutions disagree" in err


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "study.cfg"
    cfg.write_text("# smooth study\nscheme = strang\nn-modes = 32\n"
                   "tau_max = 0.0625  # comment\ntau-min = 0.015625\nseeds = 1,2\n")
    code, out, _ = run(["convergence", "--config", str(cfg), "--data", "rough:2:0", "--target-tol", "1e-3"],
                       capsys)
    assert code == 0
    data = rows(out)
    assert {r["scheme"] for r in data} == {"strang"}
    assert [r["seed"] for r in data] == ["1"] * 3 + ["2"] * 3
    assert {r["n_modes"] for r in data} == {"32"}
    # command line wins over the file
    code, out, _ = run(["convergence", "--config", str(cfg), "--scheme", "lie", "--data", "rough:2:0",
                        "--target-tol", "1e-3"], capsys)
    assert {r["scheme"] for r in rows(out)} == {"lie"}


@pytest.mark.parametrize("text", ["scheme = rk4\n", "colour = blue\n", "just words\n", "n-modes = many\n"])
def test_bad_config(tmp_path, capsys, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _, err = run(["run", "--config", str(cfg)], capsys)
    assert code == 1
    assert str(cfg) in err


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["convergence", "--scheme", "res1", "--data", "rough:2:4", "--n-modes", "32",
            "--tau-max", "0.125", "--tau-min", "0.03125", "--target-tol", "1e-3"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("scheme,equation,n_modes,sigma,seed,T,tau,l2_error,hs_error,retained\n")


def test_diagnose(capsys):
    code, out, err = run(["diagnose", "--scheme", "lie", "--n-modes", "32", "--steps", "5"], capsys)
    assert code == 0
    data = rows(out)
    assert len(data) == 6
    assert "relative mass drift" in err and "symmetry defect" in err


def test_oscint(capsys):
    code, out, _ = run(["oscint", "--n-modes", "32", "--t-max", "0.125", "--t-min", "0.03125"], capsys)
    assert code == 0
    data = rows(out)
    assert [float(r["t"]) for r in data] == [0.125, 0.0625, 0.03125]
    e1 = [float(r["order1_error"]) for r in data]
    e2 = [float(r["order2_error"]) for r in data]
    assert all(b < a for a, b in zip(e1, e2))


def test_general_equation(capsys):
    code, out, _ = run(["run", "--scheme", "general_res1", "--equation", "ginzburg_landau",
                        "--eq-param", "alpha=1+0.5j", "--eq-param", "gamma=0.5", "--n-modes", "32",
                        "--tau", "0.01"], capsys)
    assert code == 0 and len(rows(out)) == 32


def test_help_lists_defaults():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        text = p.format_help()
        flags = [a for a in p._actions if a.dest != "help"]
        assert text.count("(default:") == len(flags), name
        for a in flags:
            assert a.option_strings[0] in text


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "resonant.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    for name in ("run", "convergence", "diagnose", "oscint"):
        assert name in out.stdout
