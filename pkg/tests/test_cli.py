import json

import numpy as np
import pytest

from biconn import __version__, cli, fields, frames, samples
from biconn.fields import Grid
from biconn.holonomy import square_loop

GRID = Grid.uniform((1, 9, 9, 9), (0, 1, 0, 0), (0, 2, 1, 1))


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def rindler_file(tmp_path):
    path = tmp_path / "rindler.json"
    fields.write_json(path, frames.frame_to_json(samples.frame_from_function(3, GRID, samples.rindler_coframe(3))))
    return path


@pytest.fixture
def loop_file(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(json.dumps(square_loop([0, 1.25, 0.25, 0.5], 1, 2, 0.5, 8).to_json()))
    return path


def test_verify_n3(capsys):
    assert run("verify", "--n", 3) == 0
    assert "family dimension 1" in capsys.readouterr().out


def test_verify_n4(capsys):
    assert run("verify-splitting", "--n", 4) == 0
    assert "psi = 0" in capsys.readouterr().out


def test_verify_rigid(capsys):
    assert run("verify", "--n", 5, "--beta", 1) == 1
    assert "rigid splitting" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["verify", "--n", "2"], ["verify"], ["nonsense"],
                                  ["verify", "--n", "3", "--beta", "x"], ["verify", "--n", "3", "--tol", "-1"],
                                  ["dimension-table", "--max", "2"]])
def test_usage_errors(argv, capsys):
    assert run(*argv) == 1


def test_report_envelope_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify", "--n", 3, "--beta", "2/3", "--seed", 11, "--output", a) == 0
    assert run("verify", "--n", 3, "--beta", "2/3", "--seed", 11, "--output", b) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["version"] == __version__ and report["seed"] == 11
    assert report["tolerances"]["numeric"] == cli.DEFAULT_TOL
    assert report["result"]["beta"] == "2/3" and report["passed"]


def test_tolerance_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(cli.TOL_ENV, "1e-9")
    out = tmp_path / "r.json"
    assert run("dimension-table", "--max", 4, "--output", out) == 0
    assert json.loads(out.read_text())["tolerances"]["numeric"] == 1e-9


def test_dimension_table(capsys):
    assert run("dimension-table", "--max", 6) == 0
    out = capsys.readouterr().out
    assert "   3                  1           1" in out
    assert "   6                  0           0" in out


def test_tables(tmp_path, capsys):
    assert run("tables", "--output", tmp_path) == 0
    out = capsys.readouterr().out
    assert "pauli check: PASS" in out and "alpha = -1/4" in out
    rows = (tmp_path / "bracket_table_n3.csv").read_text().splitlines()
    assert len(rows) == 16
    for name in ("iso_check_n3.json", "pauli_check.json", "su2_basis.json"):
        assert json.loads((tmp_path / name).read_text())["passed"]


def test_pipeline_identity_frame(tmp_path):
    frame = tmp_path / "id.json"
    fields.write_json(frame, frames.frame_to_json(samples.frame_from_function(3, GRID, samples.identity_coframe(3))))
    assert run("pipeline", "--frame", frame, "--beta", 1, "--out", tmp_path / "bi.json") == 0
    bi = fields.bi_from_json(fields.read_json(tmp_path / "bi.json"))
    assert not bi.A.any() and not bi.K.any()
    assert (tmp_path / "bi.metric.json").exists() and (tmp_path / "bi.omega.json").exists()


def test_pipeline_rindler_with_sweep(tmp_path, rindler_file, loop_file):
    out = tmp_path / "bi.json"
    assert run("pipeline", "--frame", rindler_file, "--beta", 1, "--out", out,
               "--loop", loop_file, "--beta-sweep=-1:1:5") == 0
    bi = fields.bi_from_json(fields.read_json(out))
    assert np.allclose(bi.K[0, 0], 1, atol=1e-12)
    csv = (tmp_path / "bi.holonomy.csv").read_text().splitlines()
    assert len(csv) == 6


def test_pipeline_single_holonomy_and_holonomy_command(tmp_path, rindler_file, loop_file):
    out = tmp_path / "bi.json"
    assert run("pipeline", "--frame", rindler_file, "--out", out, "--loop", loop_file) == 0
    assert "matrix" in json.loads((tmp_path / "bi.holonomy.json").read_text())["result"]
    report = tmp_path / "hol.json"
    assert run("holonomy", "--bi", out, "--loop", loop_file, "--output", report) == 0
    data = json.loads(report.read_text())
    assert len(data["result"]["matrix"]) == 2 and len(data["result"]["trace"]) == 2
    assert run("holonomy", "--bi", out, "--loop", loop_file, "--beta-sweep", "0:2:3") == 0


def test_pipeline_bad_frame(tmp_path, capsys):
    frame = tmp_path / "bad.json"
    data = frames.frame_to_json(samples.frame_from_function(3, GRID, samples.identity_coframe(3)))
    data["coframe"] = [0.0] * len(data["coframe"])
    fields.write_json(frame, data)
    assert run("pipeline", "--frame", frame, "--out", tmp_path / "bi.json") == 2
    assert "[frame_geometry]" in capsys.readouterr().err


def test_decompose_recompose_files(tmp_path, rindler_file):
    assert run("pipeline", "--frame", rindler_file, "--out", tmp_path / "bi.json") == 0
    omega = tmp_path / "bi.omega.json"
    assert run("decompose", "--input", omega, "--beta", "0.5", "--output", tmp_path / "d.json") == 0
    assert run("recompose", "--input", tmp_path / "d.json", "--output", tmp_path / "w.json") == 0
    a = fields.connection_from_json(fields.read_json(omega)).values
    b = fields.connection_from_json(fields.read_json(tmp_path / "w.json")).values
    assert np.array_equal(a, b)


def test_decompose_rigid_n4(tmp_path):
    grid = Grid((1,) * 5, (1.0,) * 5, (0.0,) * 5)
    w = fields.SpinConnectionCoeffs(4, np.zeros((10, 5) + grid.dims), grid)
    fields.write_json(tmp_path / "w.json", fields.connection_to_json(w))
    assert run("decompose", "--input", tmp_path / "w.json", "--beta", 1, "--output", tmp_path / "o.json") == 1


def test_io_errors(tmp_path, loop_file):
    assert run("holonomy", "--bi", tmp_path / "missing.json", "--loop", loop_file) == 3
    (tmp_path / "junk.json").write_text("{not json")
    assert run("decompose", "--input", tmp_path / "junk.json", "--output", tmp_path / "o.json") == 3
