import numpy as np
import pytest

from siglasso.dynamics import PdgParams, simulate_pdg
from siglasso.errors import AlphabetMismatch, ParseError, ShapeMismatch
from siglasso.ingest import (TREATMENT_I, TREATMENT_I_ACTIONS, TREATMENT_II,
                             TREATMENT_II_ACTIONS, RecordedExperiment,
                             dump_experiment, from_trajectory, load_experiment,
                             read_matrix_json, reconstruct_recorded,
                             write_matrix_json)
from siglasso.netgen import gen_ws, generate


def lookup(M, actions, a, b):
    return M[actions.index(a), actions.index(b)]


def test_treatment_matrices():
    assert lookup(TREATMENT_I, TREATMENT_I_ACTIONS, "C", "D") == -2
    assert lookup(TREATMENT_I, TREATMENT_I_ACTIONS, "D", "C") == 4
    assert lookup(TREATMENT_I, TREATMENT_I_ACTIONS, "P", "D") == -2
    assert lookup(TREATMENT_II, TREATMENT_II_ACTIONS, "C", "C") == 4
    assert lookup(TREATMENT_II, TREATMENT_II_ACTIONS, "D", "C") == 6


def test_pair_payoff_uses_matrix():
    s = np.array([[0, 1, 2]], dtype=np.int8)
    exp = RecordedExperiment(s, np.zeros((1, 3)), TREATMENT_I, TREATMENT_I_ACTIONS)
    assert exp.pair_payoff(0, 0, 1) == -2.0
    assert exp.pair_payoff(0, 2, 1) == -2.0
    assert exp.pair_payoff(0, 1, 0) == 4.0


def test_empty_file(tmp_path):
    (tmp_path / "s.csv").write_text("")
    with pytest.raises(ParseError):
        load_experiment(tmp_path / "s.csv")


def test_header_only_and_missing_column(tmp_path):
    (tmp_path / "s.csv").write_text("round,node,strategy,fitness\n")
    with pytest.raises(ParseError):
        load_experiment(tmp_path / "s.csv")
    (tmp_path / "t.csv").write_text("round,node,strategy\n0,0,C\n")
    with pytest.raises(ParseError):
        load_experiment(tmp_path / "t.csv")


def test_unknown_action(tmp_path):
    (tmp_path / "s.csv").write_text("round,node,strategy,fitness\n0,0,C,1\n0,1,X,0\n")
    with pytest.raises(AlphabetMismatch):
        load_experiment(tmp_path / "s.csv")


def test_missing_and_duplicate_cells(tmp_path):
    (tmp_path / "s.csv").write_text(
        "round,node,strategy,fitness\n0,0,C,1\n0,1,D,0\n1,0,C,1\n")
    with pytest.raises(ShapeMismatch):
        load_experiment(tmp_path / "s.csv")
    (tmp_path / "d.csv").write_text("round,node,strategy,fitness\n0,0,C,1\n0,0,D,0\n")
    with pytest.raises(ShapeMismatch):
        load_experiment(tmp_path / "d.csv")


def test_separate_fitness_file(tmp_path):
    (tmp_path / "s.csv").write_text("round,node,strategy\n0,0,C\n0,1,D\n")
    (tmp_path / "f.csv").write_text("round,node,fitness\n0,0,0.5\n0,1,2.5\n")
    exp = load_experiment(tmp_path / "s.csv", tmp_path / "f.csv")
    assert exp.fitness.tolist() == [[0.5, 2.5]]
    (tmp_path / "g.csv").write_text("round,node,fitness\n0,0,0.5\n")
    with pytest.raises(ShapeMismatch):
        load_experiment(tmp_path / "s.csv", tmp_path / "g.csv")


def test_matrix_json(tmp_path):
    write_matrix_json(TREATMENT_I_ACTIONS, TREATMENT_I, tmp_path / "m.json")
    actions, M = read_matrix_json(tmp_path / "m.json")
    assert actions == TREATMENT_I_ACTIONS and np.array_equal(M, TREATMENT_I)
    (tmp_path / "bad.json").write_text('{"actions": ["C", "D"], "payoff": [[1, 2, 3]]}')
    with pytest.raises(AlphabetMismatch):
        read_matrix_json(tmp_path / "bad.json")
    (tmp_path / "junk.json").write_text("not json")
    with pytest.raises(ParseError):
        read_matrix_json(tmp_path / "junk.json")


def test_experiment_validation():
    with pytest.raises(AlphabetMismatch):
        RecordedExperiment(np.zeros((1, 2), np.int8), np.zeros((1, 2)), np.eye(3), ("C", "D"))
    with pytest.raises(AlphabetMismatch):
        RecordedExperiment(np.full((1, 2), 2, np.int8), np.zeros((1, 2)), np.eye(2), ("C", "D"))
    with pytest.raises(ShapeMismatch):
        RecordedExperiment(np.zeros((1, 2), np.int8), np.zeros((2, 2)), np.eye(2), ("C", "D"))


def test_dump_load_round_trip(tmp_path):
    net = gen_ws(12, 4, 0.2, seed=1)
    traj = simulate_pdg(net, PdgParams(payoff=TREATMENT_I, actions=TREATMENT_I_ACTIONS,
                                       L=9, noise_sigma=0.5), 1)
    exp = from_trajectory(traj)
    dump_experiment(exp, tmp_path / "s.csv", tmp_path / "m.json", tmp_path / "t.edgelist")
    back = load_experiment(tmp_path / "s.csv", matrix_json=tmp_path / "m.json",
                           truth_edgelist=tmp_path / "t.edgelist")
    np.testing.assert_array_equal(back.strategies, exp.strategies)
    np.testing.assert_array_equal(back.fitness, exp.fitness)
    np.testing.assert_array_equal(back.payoff_matrix, exp.payoff_matrix)
    assert back.actions == exp.actions and back.truth == exp.truth


def test_closed_loop_noiseless(tmp_path):
    net = generate("er", 20, 4, seed=[0, 1])
    traj = simulate_pdg(net, PdgParams(L=40), [0, 2])
    dump_experiment(from_trajectory(traj), tmp_path / "s.csv", truth_edgelist=tmp_path / "t.el")
    exp = load_experiment(tmp_path / "s.csv", truth_edgelist=tmp_path / "t.el")
    rec = reconstruct_recorded(exp, "slprod")
    assert rec.report.mcca == 1.0
    assert rec.estimate == net


def test_ring_treatment_one():
    net = gen_ws(35, 4, 0.0, seed=0)
    traj = simulate_pdg(net, PdgParams(payoff=TREATMENT_I, actions=TREATMENT_I_ACTIONS, L=35), 0)
    rec = reconstruct_recorded(from_trajectory(traj), "slprod", seed=0)
    assert rec.report.mcca >= 0.9
    assert rec.report.mcca == pytest.approx(0.9433, abs=1e-4)


def test_truth_absent_gives_estimate_only():
    net = gen_ws(15, 4, 0.1, seed=3)
    traj = simulate_pdg(net, PdgParams(L=30), 3)
    exp = from_trajectory(traj)
    exp = RecordedExperiment(exp.strategies, exp.fitness, exp.payoff_matrix, exp.actions)
    rec = reconstruct_recorded(exp, deltas=(0.5, 1.0))
    assert rec.report is None
    assert rec.estimate.n == 15 and len(rec.solutions) == 15
    assert [set(r) for r in rec.sweep] == [{"delta", "L", "edges"}] * 2


def test_delta_beyond_recording():
    traj = simulate_pdg(gen_ws(10, 2, 0.0, seed=0), PdgParams(L=5), 0)
    with pytest.raises(ShapeMismatch):
        reconstruct_recorded(from_trajectory(traj), deltas=(1.0,))
