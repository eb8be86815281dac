import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from siglasso.dynamics import (KuramotoParams, PdgParams, build_regression,
                               coupling, dilemma_matrix, dump_kuramoto,
                               dump_pdg, fermi_prob, load_kuramoto, load_pdg,
                               pdg_payoff, simulate_kuramoto, simulate_pdg)
from siglasso.errors import SpecInvalid
from siglasso.netgen import gen_er, gen_ws, generate
from siglasso.solvers import fit

seeds = st.integers(0, 2**31)


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        yield


def test_payoff_lookup():
    assert pdg_payoff("D", "C") == 1.15
    assert pdg_payoff("C", "C") == 1.0
    assert pdg_payoff(1, 1) == 0.0
    assert dilemma_matrix().tolist() == [[1.0, 0.0], [1.15, 0.0]]


def test_fermi_frozen_and_symmetric():
    assert fermi_prob(1.0, 0.9, 0.1) == pytest.approx(0.2689414213699951, abs=1e-12)
    assert fermi_prob(0.0, 0.0, 0.1) == 0.5
    assert fermi_prob(1e6, 0.0, 0.1) == 0.0 and fermi_prob(0.0, 1e6, 0.1) == 1.0


@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(0.01, 5))
def test_fermi_complement(a, b, K):
    assert fermi_prob(a, b, K) + fermi_prob(b, a, K) == pytest.approx(1.0)


def test_pdg_param_validation():
    with pytest.raises(SpecInvalid):
        PdgParams(K=0.0)
    with pytest.raises(SpecInvalid):
        PdgParams(mutation_rate=1.0)
    with pytest.raises(SpecInvalid):
        PdgParams(payoff=np.eye(2), strict=True)
    with pytest.raises(SpecInvalid):
        PdgParams(payoff=np.eye(3))
    PdgParams(strict=True)


@given(seeds, st.integers(1, 30))
def test_pdg_prefix_property(seed, L):
    net = gen_er(25, 4, seed=seed)
    long = simulate_pdg(net, PdgParams(L=40, noise_sigma=0.2), seed)
    short = simulate_pdg(net, PdgParams(L=L, noise_sigma=0.2), seed)
    np.testing.assert_array_equal(short.strategies, long.strategies[:L])
    np.testing.assert_array_equal(short.fitness, long.fitness[:L])


@given(seeds)
def test_noiseless_pdg_fitness_is_linear_in_adjacency(seed):
    net = generate("ba", 30, 4, seed=seed)
    traj = simulate_pdg(net, PdgParams(L=20), seed)
    for i in (0, 7, 29):
        prob, truth = build_regression(traj, i)
        np.testing.assert_allclose(prob.X @ truth, prob.Y, atol=1e-12)


def test_cooperation_band():
    means = []
    for s in range(20):
        traj = simulate_pdg(generate("er", 100, 6, seed=s), PdgParams(), s)
        coop = 1.0 - traj.strategies.mean(axis=1)
        assert coop.max() <= 0.75
        means.append(coop[10:].mean())
    assert 0.05 < min(means) and max(means) < 0.4


def test_pdg_csv_round_trip(tmp_path):
    traj = simulate_pdg(gen_er(10, 3, seed=1), PdgParams(L=6, noise_sigma=0.3), 2)
    dump_pdg(traj, tmp_path / "t.csv")
    back = load_pdg(tmp_path / "t.csv")
    np.testing.assert_array_equal(back.strategies, traj.strategies)
    np.testing.assert_array_equal(back.fitness, traj.fitness)


def test_kuramoto_param_validation():
    with pytest.raises(SpecInvalid):
        KuramotoParams(h=0.0)
    with pytest.raises(SpecInvalid):
        KuramotoParams(restart_every=0)


def test_kuramoto_shapes_and_segments():
    net = gen_er(12, 3, seed=0)
    single = simulate_kuramoto(net, KuramotoParams(L=20), 0)
    assert single.theta.shape == (21, 12) and single.L == 20
    seg = simulate_kuramoto(net, KuramotoParams(L=12, restart_every=5), 0)
    assert seg.theta.shape == (12 + 3, 12)
    assert seg.L == 12
    assert seg.segment.tolist() == [0] * 6 + [1] * 6 + [2] * 3


@given(seeds, st.integers(1, 23), st.sampled_from([None, 4]))
def test_kuramoto_prefix_property(seed, L, every):
    net = gen_ws(15, 4, 0.2, seed=seed)
    long = simulate_kuramoto(net, KuramotoParams(L=23, restart_every=every), seed)
    short = simulate_kuramoto(net, KuramotoParams(L=L, restart_every=every), seed)
    head = long.head(L)
    assert head.L == L
    np.testing.assert_array_equal(short.theta, head.theta)


def test_uncoupled_oscillators_drift_at_natural_frequency():
    net = gen_er(8, 0, seed=0)
    traj = simulate_kuramoto(net, KuramotoParams(L=50), 3)
    np.testing.assert_allclose(np.diff(traj.theta, axis=0) / 0.01,
                               np.broadcast_to(traj.omega, (50, 8)), atol=1e-10)


def test_velocity_bound():
    net = gen_er(100, 6, seed=1)
    traj = simulate_kuramoto(net, KuramotoParams(L=1000), 1)
    v = np.abs(np.diff(traj.theta, axis=0)) / 0.01
    assert v.max() <= 1 + 10 * net.degrees().max()


def test_coupling_matches_loop(rng):
    A = gen_er(6, 2, seed=4).matrix
    th = rng.uniform(0, 6, 6)
    loop = [sum(A[i, j] * np.sin(th[j] - th[i]) for j in range(6)) for i in range(6)]
    np.testing.assert_allclose(coupling(A, th), loop, atol=1e-12)


@given(seeds, st.sampled_from([None, 5]))
def test_kuramoto_regression_identity(seed, every):
    net = gen_er(20, 4, seed=seed)
    traj = simulate_kuramoto(net, KuramotoParams(L=30, restart_every=every), seed)
    for i in (0, 19):
        prob, truth = build_regression(traj, i)
        assert prob.n == 30
        np.testing.assert_allclose(prob.X @ truth + traj.omega[i], prob.Y, atol=1e-9)
        assert prob.intercept_for(truth) == pytest.approx(traj.omega[i], abs=1e-9)


def test_restarts_make_kuramoto_identifiable():
    net = gen_er(30, 4, seed=2)
    traj = simulate_kuramoto(net, KuramotoParams(L=60, restart_every=5), 2)
    for i in range(30):
        prob, truth = build_regression(traj, i)
        assert np.array_equal(fit(prob, "slprod").beta, truth)


def test_kuramoto_csv_round_trip(tmp_path):
    net = gen_er(6, 2, seed=0)
    for every in (None, 3):
        traj = simulate_kuramoto(net, KuramotoParams(L=7, restart_every=every), 0)
        dump_kuramoto(traj, tmp_path / "k.csv")
        back = load_kuramoto(tmp_path / "k.csv", c=10.0, h=0.01)
        np.testing.assert_array_equal(back.theta, traj.theta)
        assert back.L == traj.L
        np.testing.assert_array_equal(back.steps(), traj.steps())


def test_strong_coupling_warns():
    net = gen_er(50, 10, seed=0)
    with pytest.warns(RuntimeWarning):
        warnings.simplefilter("always")
        simulate_kuramoto(net, KuramotoParams(L=2), 0)
