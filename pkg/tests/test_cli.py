"""Command-line interface: exit codes, outputs, determinism."""

import json
import os

from scarlab.cli import EXIT_INVALID, EXIT_OK, EXIT_PHYSICS, main


def run(args):
    return main(args)


def test_elliptic_subcommand(tmp_path):
    out = str(tmp_path)
    assert run(["--out", out, "elliptic", "--points", "200"]) == EXIT_OK
    assert (tmp_path / "elliptic.csv").exists()
    doc = json.loads((tmp_path / "elliptic.json").read_text())
    assert doc["version"]
    assert doc["config"]["points"] == 200


def test_frame_subcommand(tmp_path):
    out = str(tmp_path)
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"J1": 0.3, "J2": -0.2, "J3": 0.7,
                                "J12": 0.15, "J13": -0.05, "J23": 0.1}))
    assert run(["--out", out, "frame", "--couplings", str(path)]) == EXIT_OK


def test_scar_verify_chain(tmp_path, capsys):
    out = str(tmp_path)
    code = run(["--out", out, "scar-verify", "--lattice", "chain",
                "--N", "6", "--S", "1", "--p", "1", "--kappa", "0.8",
                "--gamma", "0.5", "--helicity", "+"])
    assert code == EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_degeneracy_scan_csv(tmp_path):
    out = str(tmp_path)
    assert run(["--out", out, "degeneracy-scan", "--S", "1",
                "--N", "4..5", "--kappa", "0.8", "--p", "1"]) == EXIT_OK
    body1 = (tmp_path / "degeneracy_scan.csv").read_bytes()
    assert run(["--out", out, "degeneracy-scan", "--S", "1",
                "--N", "4..5", "--kappa", "0.8", "--p", "1"]) == EXIT_OK
    assert (tmp_path / "degeneracy_scan.csv").read_bytes() == body1
    doc = json.loads((tmp_path / "degeneracy_scan.json").read_text())
    assert doc["config"]["kappa"] == 0.8


def test_projections_subcommand(tmp_path):
    out = str(tmp_path)
    assert run(["--out", out, "projections", "--N", "6", "--S", "1",
                "--p", "1", "--kappa", "0.8"]) == EXIT_OK


def test_lattice_generate_and_check(tmp_path, capsys):
    out = str(tmp_path)
    assert run(["--out", out, "lattice-generate", "--kind", "honeycomb_su2",
                "--dims", "4,2"]) == EXIT_OK
    graph = tmp_path / "honeycomb_su2.json"
    assert graph.exists()
    assert run(["--out", out, "lattice-check", "--graph", str(graph)]) == EXIT_OK
    assert "classification" in capsys.readouterr().out


def test_schwinger_subcommand(tmp_path):
    assert run(["--out", str(tmp_path), "schwinger-check", "--N", "3",
                "--S", "1/2", "--p", "1"]) == EXIT_OK


def test_invalid_inputs(tmp_path):
    assert run(["--out", str(tmp_path), "lattice-check",
                "--graph", str(tmp_path / "missing.json")]) == EXIT_INVALID
    assert run(["no-such-command"]) == EXIT_INVALID


def test_physics_failure_exit_code(tmp_path):
    # an impossible residual tolerance must fail as physics, not crash
    code = run(["--out", str(tmp_path), "scar-verify", "--lattice", "chain",
                "--N", "5", "--S", "1/2", "--p", "1", "--kappa", "0.5",
                "--gamma", "0.3", "--tol", "1e-30"])
    assert code == EXIT_PHYSICS


def test_thread_cap_env(tmp_path, monkeypatch):
    from scarlab import cli
    monkeypatch.setenv("SCARLAB_THREADS", "2")
    monkeypatch.delenv("OMP_NUM_THREADS", raising=False)
    cli._apply_thread_cap()
    assert os.environ["OMP_NUM_THREADS"] == "2"
