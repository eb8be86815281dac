import json
import subprocess
import sys

import numpy as np
import pytest

from siglasso.cli import main
from siglasso.dynamics import PdgParams, simulate_pdg
from siglasso.ingest import dump_experiment, from_trajectory
from siglasso.netgen import generate, read_edgelist


@pytest.fixture
def xy(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.standard_normal((40, 8))
    Y = X @ np.array([1, 0, 1, 0, 0, 1, 0, 0.0]) + 0.1 * rng.standard_normal(40)
    np.savetxt(tmp_path / "X.csv", X, delimiter=",")
    np.savetxt(tmp_path / "Y.csv", Y, delimiter=",")
    return tmp_path / "X.csv", tmp_path / "Y.csv"


def test_solve_auto_gives_signals(xy, tmp_path):
    out = tmp_path / "o"
    assert main(["solve", str(xy[0]), str(xy[1]), "--method", "slprod", "--auto",
                 "--out-dir", str(out)]) == 0
    beta = np.loadtxt(out / "beta.csv")
    assert set(np.unique(beta)) <= {0.0, 1.0}
    assert beta.tolist() == [1, 0, 1, 0, 0, 1, 0, 0]
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["method"] == "slprod" and manifest["config"]["auto"] is True


def test_solve_fixed_lambda(xy, tmp_path):
    assert main(["solve", str(xy[0]), str(xy[1]), "--method", "lasso", "--lambda", "0.5",
                 "--out-dir", str(tmp_path)]) == 0
    assert np.loadtxt(tmp_path / "beta.csv").shape == (8,)


def test_unknown_flag_is_usage_error(capsys):
    assert main(["solve", "--bogus"]) == 1
    assert "usage" in capsys.readouterr().err


def test_missing_file_is_data_error(tmp_path):
    assert main(["solve", str(tmp_path / "nope.csv"), str(tmp_path / "nope.csv"),
                 "--auto", "--out-dir", str(tmp_path)]) == 2


def test_invalid_parameter_is_usage_error(tmp_path):
    assert main(["case", "I", "--p1", "50", "--p", "10", "--reps", "1",
                 "--out-dir", str(tmp_path)]) == 1
    assert main(["case", "I", "--methods", "ridge", "--reps", "1",
                 "--out-dir", str(tmp_path)]) == 1


def test_config_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 9, "case": {"reps": 2, "methods": "slprod",
                                                   "n": 30, "p": 10, "p1": 3}}))
    out = tmp_path / "o"
    assert main(["case", "I", "--config", str(cfg), "--reps", "1", "--out-dir", str(out)]) == 0
    eff = json.loads((out / "manifest.json").read_text())["config"]
    assert (eff["seed"], eff["reps"], eff["n"], eff["sigma"]) == (9, 1, 30, 0.4)
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert main(["case", "I", "--config", str(cfg), "--out-dir", str(out)]) == 1


def test_case_is_byte_reproducible(tmp_path):
    args = ["case", "II", "--n", "30", "--p", "10", "--p1", "3", "--sigma", "0.5",
            "--reps", "2", "--methods", "slprod,lasso", "--seed", "5"]
    for d in ("a", "b"):
        assert main(args + ["--out-dir", str(tmp_path / d)]) == 0
    for name in ("results.csv", "results_summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_simulate_and_reconstruct(tmp_path):
    assert main(["simulate", "pdg", "--N", "20", "--k", "4", "--L", "40", "--seed", "1",
                 "--out-dir", str(tmp_path / "sim")]) == 0
    sim = tmp_path / "sim"
    assert read_edgelist(sim / "network.edgelist").n == 20
    assert main(["reconstruct", str(sim / "trajectory.csv"), "--truth",
                 str(sim / "network.edgelist"), "--deltas", "1,2",
                 "--out-dir", str(tmp_path / "rec")]) == 0
    rec = tmp_path / "rec"
    assert (rec / "estimate.edgelist").exists() and (rec / "metrics.csv").exists()
    assert len((rec / "delta_sweep.csv").read_text().splitlines()) == 3


def test_reconstruct_exact_data(tmp_path):
    net = generate("er", 20, 4, seed=[0, 1])
    traj = simulate_pdg(net, PdgParams(L=40), [0, 2])
    dump_experiment(from_trajectory(traj), tmp_path / "s.csv", truth_edgelist=tmp_path / "t.el")
    assert main(["reconstruct", str(tmp_path / "s.csv"), "--truth", str(tmp_path / "t.el"),
                 "--out-dir", str(tmp_path)]) == 0
    assert read_edgelist(tmp_path / "estimate.edgelist", n=20) == net


def test_reconstruct_bad_alphabet(tmp_path):
    (tmp_path / "s.csv").write_text("round,node,strategy,fitness\n0,0,Q,1\n")
    assert main(["reconstruct", str(tmp_path / "s.csv"), "--out-dir", str(tmp_path)]) == 2


def test_simulate_kuramoto_restarts(tmp_path):
    assert main(["simulate", "kuramoto", "--N", "10", "--k", "2", "--L", "6",
                 "--restart-every", "3", "--out-dir", str(tmp_path)]) == 0
    assert "segment" in (tmp_path / "trajectory.csv").read_text().splitlines()[0]


def test_sweep_and_bench(tmp_path):
    assert main(["sweep-delta", "--dynamics", "kuramoto", "--N", "12", "--k", "2",
                 "--deltas", "0.5,1", "--reps", "1", "--methods", "slprod",
                 "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "sweep_summary.csv").exists()
    assert main(["bench", "--n", "30", "--p", "10", "--p1", "2", "--repetitions", "1",
                 "--methods", "slprod", "--out-dir", str(tmp_path)]) == 0
    assert "median_seconds" in (tmp_path / "bench_timing.csv").read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "siglasso", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "reconstruct" in proc.stdout
