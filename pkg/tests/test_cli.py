import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from spinscatter.cli import SweepSpec, parse_angle, run, sweep_rows
from spinscatter.entanglement import closed_form_entanglement
from spinscatter.partial_wave import PhaseShiftTable

E_PI4_PI8 = 0.20576305427568917


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def scatter_fields(text):
    return {r[0]: r[1:] for r in rows_of(text)[1:]}


def test_parse_angle():
    assert parse_angle("0.5") == 0.5
    assert parse_angle("pi") == math.pi
    assert parse_angle("pi/2") == math.pi / 2
    assert parse_angle("-3pi/4") == -3 * math.pi / 4
    assert parse_angle("0.5*pi") == 0.5 * math.pi
    with pytest.raises(Exception):
        parse_angle("pie")


@pytest.mark.parametrize("theta, d0, d1, expected", [
    ("0", "0.3", "1.1", 0.0),
    ("pi/2", "pi/4", "0", 1.0),
    ("pi/4", "pi/8", "0", E_PI4_PI8),
])
def test_scatter(theta, d0, d1, expected):
    code, out = run(["scatter", "--theta", theta, "--delta0", d0, "--delta1", d1])
    assert code == 0
    f = scatter_fields(out)
    assert float(f["entropy_bits"][0]) == pytest.approx(expected, abs=1e-11)
    assert float(f["residual"][0]) < 1e-10


def test_scatter_json_matches_csv():
    args = ["scatter", "--theta", "1.0", "--delta0", "0.7", "--delta1", "-0.2"]
    _, c = run(args)
    _, j = run(args + ["--format", "json"])
    f, d = scatter_fields(c), json.loads(j)
    assert float(f["entropy_bits"][0]) == d["entanglement"]["entropy_bits"]
    assert float(f["out_product[+-]"][0]) == d["out_product"]["+-"][0]
    assert float(f["out_coupled[00]"][1]) == d["out_coupled"]["00"][1]


def test_scatter_degrees():
    _, a = run(["scatter", "--theta", "90", "--delta0", "45", "--degrees"])
    assert float(scatter_fields(a)["entropy_bits"][0]) == pytest.approx(1.0, abs=1e-11)


@pytest.mark.parametrize("argv", [
    ["scatter", "--theta", "4", "--delta0", "0"],
    ["scatter", "--theta", "-0.1", "--delta0", "0"],
    ["scatter", "--theta", "abc", "--delta0", "0"],
    ["scatter", "--delta0", "0"],
    ["sweep", "--theta-range", "1", "0", "5"],
    ["sweep", "--theta-range", "0", "1", "1"],
    ["sweep", "--delta-range", "0", "x", "3"],
    ["sweep", "--precision", "zero"],
    ["tables", "cgc", "1/2"],
    ["tables", "nope"],
    ["tables", "coupling", "1/2", "1/2"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_1(argv):
    assert run(argv)[0] == 1


def test_sweep_rows_and_symmetry():
    code, out = run(["sweep", "--theta-range", "0", "pi", "5", "--delta-range", "0", "pi", "9",
                     "--precision", "full"])
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["theta", "delta_diff", "entanglement"]
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    assert data.shape == (45, 3)
    grid = data[:, 2].reshape(5, 9)
    assert np.all(grid[0] == 0.0)
    assert np.all(grid[:, 0] == 0.0)
    assert np.max(np.abs(grid - grid[:, ::-1])) < 1e-12
    # theta-major ordering
    assert np.all(np.diff(data[:, 0].reshape(5, 9)[:, 0]) > 0)


def test_sweep_csv_and_json_identical():
    base = ["sweep", "--theta-range", "0.1", "3", "4", "--delta-range", "-1", "2", "6"]
    _, c = run(base)
    _, j = run(base + ["--format", "json"])
    csv_vals = [[float(v) for v in r] for r in rows_of(c)[1:]]
    assert csv_vals == json.loads(j)["rows"]


def test_sweep_default_precision_is_12_digits():
    _, out = run(["sweep", "--theta-range", "0.3", "1.3", "3", "--delta-range", "0.2", "0.9", "4"])
    lib = sweep_rows(SweepSpec((0.3, 1.3, 3), (0.2, 0.9, 4)))
    emitted = rows_of(out)[1:]
    assert len(emitted) == len(lib)
    for r, row in zip(emitted, lib):
        assert r == [format(v, ".12g") for v in row]


def write_table(path, funcs, qs):
    PhaseShiftTable.from_functions(funcs, qs).save(path)


def test_partial_wave_equal_phases(tmp_path):
    p = tmp_path / "eq.csv"
    write_table(p, {(1, 0): lambda q: 0.4 * q, (1, 1): lambda q: 0.4 * q}, np.linspace(0, 2, 5))
    code, out = run(["partial-wave", "--table", str(p), "--l", "1", "--theta", "pi/3",
                     "--q-start", "0", "--q-end", "2", "--q-count", "7"])
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["q", "delta_l0", "delta_l1", "entanglement"]
    assert all(abs(float(r[3])) < 1e-12 for r in rows[1:])


def test_partial_wave_maximal_and_closed_form(tmp_path):
    p = tmp_path / "pw.csv"
    # 2 (delta_00 - delta_01) = pi/2 at q* = 1
    write_table(p, {(0, 0): lambda q: math.pi / 4 * q, (0, 1): lambda q: 0.0}, np.linspace(0, 2, 9))
    code, out = run(["partial-wave", "--table", str(p), "--l", "0", "--theta", "pi/2",
                     "--q-start", "0", "--q-end", "2", "--q-count", "9", "--precision", "full"])
    assert code == 0
    rows = [[float(v) for v in r] for r in rows_of(out)[1:]]
    at_qstar = [r for r in rows if r[0] == 1.0]
    assert at_qstar and at_qstar[0][3] == pytest.approx(1.0, abs=1e-12)
    for q, d0, d1, e in rows:
        assert abs(e - closed_form_entanglement(math.pi / 2, d0, d1)) < 1e-10


def test_partial_wave_errors(tmp_path):
    p = tmp_path / "pw.csv"
    write_table(p, {(0, 0): lambda q: q, (0, 1): lambda q: 0.0}, np.linspace(0, 2, 3))
    base = ["partial-wave", "--table", str(p), "--theta", "1", "--q-count", "3"]
    assert run(base + ["--l", "1", "--q-start", "0", "--q-end", "1"])[0] == 2  # channel
    assert run(base + ["--l", "0", "--q-start", "0", "--q-end", "3"])[0] == 2  # range
    assert run(base + ["--l", "0", "--q-start", "1", "--q-end", "0"])[0] == 1  # usage
    bad = tmp_path / "bad.csv"
    bad.write_text("l,s,q,delta\n0,0,0,0\n0,0,zz,1\n")
    code = run(["partial-wave", "--table", str(bad), "--l", "0", "--theta", "1",
                "--q-start", "0", "--q-end", "1", "--q-count", "2"])[0]
    assert code == 2


def test_partial_wave_error_message_has_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("l,s,q,delta\n0,0,0,0\n0,0,1,1\n0,0,0.5,2\n")
    run(["partial-wave", "--table", str(bad), "--l", "0", "--theta", "1",
         "--q-start", "0", "--q-end", "1", "--q-count", "2"])
    err = capsys.readouterr().err
    assert "line 4" in err and str(bad) in err


def test_tables_cgc_half_half():
    code, out = run(["tables", "cgc", "1/2", "1/2"])
    assert code == 0
    rows = rows_of(out)
    mat = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    assert mat.shape == (4, 4)
    assert set(np.round(np.abs(mat.ravel()), 12)) <= {0.0, 1.0, round(1 / math.sqrt(2), 12)}
    assert np.max(np.abs(mat @ mat.T - np.eye(4))) < 1e-11


def test_tables_magic():
    code, out = run(["tables", "magic"])
    rows = rows_of(out)
    assert code == 0 and [r[0] for r in rows[1:]] == ["EPR+", "EPR-", "Bell+", "Bell-"]
    assert all(float(r[-1]) == 1.0 for r in rows[1:])


def test_tables_coupling():
    code, out = run(["tables", "coupling", "1", "1/2", "--precision", "full"])
    assert code == 0
    mat = np.array([[float(v) for v in r[1:]] for r in rows_of(out)[1:]])
    assert mat.shape == (6, 6)
    assert np.max(np.abs(mat @ mat.T - np.eye(6))) < 1e-12


def test_check_command():
    code, out = run(["check"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "9/9 checks passed"
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "spinscatter", "scatter", "--theta", "0", "--delta0", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "entropy_bits" in res.stdout
    res = subprocess.run([sys.executable, "-m", "spinscatter", "scatter"], capture_output=True, text=True)
    assert res.returncode == 1 and res.stdout == ""
