"""Evolutionary prisoner's-dilemma dynamics on a network.

Each round every player collects the total payoff of one game with each
neighbour; players then (in random order) imitate a random neighbour with
the Fermi probability, and finally mutate with a small probability.  The
recorded fitness of node ``i`` is linear in row ``i`` of the adjacency
matrix, which is what makes the network recoverable.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy.special import expit

from ..errors import ParseError, SpecInvalid
from ..netgen import Adjacency
from ..problem import RegressionProblem

COOPERATE, DEFECT = 0, 1


def dilemma_matrix(R: float = 1.0, S: float = 0.0, T: float = 1.15,
                   P: float = 0.0) -> np.ndarray:
    """Row player's payoffs, rows/columns ordered (C, D)."""
    return np.array([[R, S], [T, P]], dtype=np.float64)


@dataclass(frozen=True, eq=False)
class PdgParams:
    payoff: np.ndarray = field(default_factory=dilemma_matrix)
    K: float = 0.1
    mutation_rate: float = 0.05
    noise_sigma: float = 0.0
    L: int = 100
    actions: tuple = ("C", "D")
    strict: bool = False

    def __post_init__(self):
        M = np.array(self.payoff, dtype=np.float64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise SpecInvalid("payoff matrix must be square")
        if len(self.actions) != M.shape[0]:
            raise SpecInvalid("one action label per payoff row is required")
        M.setflags(write=False)
        object.__setattr__(self, "payoff", M)
        object.__setattr__(self, "actions", tuple(self.actions))
        if not self.K > 0:
            raise SpecInvalid("Fermi temperature K must be > 0")
        if not 0.0 <= self.mutation_rate < 1.0:
            raise SpecInvalid("mutation rate must lie in [0, 1)")
        if self.noise_sigma < 0:
            raise SpecInvalid("noise_sigma must be >= 0")
        if self.L < 1:
            raise SpecInvalid("L must be >= 1")
        if self.strict:
            if M.shape != (2, 2):
                raise SpecInvalid("strict dilemma check needs a 2x2 matrix")
            (R, S), (T, P) = M
            if not T > R > P >= S:
                raise SpecInvalid(f"not a prisoner's dilemma: T={T} R={R} P={P} S={S}")


@dataclass(frozen=True, eq=False)
class PdgTrajectory:
    """Strategies (action indices) and observed fitness, both ``L x N``."""

    strategies: np.ndarray
    fitness: np.ndarray
    payoff: np.ndarray
    actions: tuple = ("C", "D")
    adjacency: Optional[Adjacency] = None

    @property
    def L(self) -> int:
        return self.strategies.shape[0]

    @property
    def N(self) -> int:
        return self.strategies.shape[1]

    def pair_payoffs(self, t: int) -> np.ndarray:
        """``P[i, j]``: payoff of ``i`` against ``j`` in round ``t``."""
        s = self.strategies[t]
        return self.payoff[s[:, None], s[None, :]]

    def head(self, L: int) -> "PdgTrajectory":
        return PdgTrajectory(self.strategies[:L], self.fitness[:L], self.payoff,
                             self.actions, self.adjacency)


def pdg_payoff(s_i, s_j, matrix=None, actions: Sequence[str] = ("C", "D")) -> float:
    """Payoff of a player using ``s_i`` against one using ``s_j``.

    Strategies may be action labels (``"C"``) or row indices.
    """
    M = dilemma_matrix() if matrix is None else np.asarray(matrix)
    i = actions.index(s_i) if isinstance(s_i, str) else int(s_i)
    j = actions.index(s_j) if isinstance(s_j, str) else int(s_j)
    return float(M[i, j])


def fermi_prob(F_i, F_j, K: float):
    """Probability that ``i`` adopts ``j``'s strategy, ``1/(1+exp((F_i-F_j)/K))``."""
    return expit((np.asarray(F_j) - np.asarray(F_i)) / K)


def simulate_pdg(adj: Adjacency, params: PdgParams, seed=None,
                 initial: Optional[np.ndarray] = None) -> PdgTrajectory:
    """Run ``params.L`` rounds and record strategies and fitness.

    Random draws happen round by round, so the first ``L'`` rounds of a run
    equal a run of length ``L'`` with the same seed.
    """
    rng = np.random.default_rng(seed)
    N = adj.n
    M = params.payoff
    m = M.shape[0]
    A = adj.matrix.astype(np.float64)
    nbrs = adj.neighbors()
    if initial is None:
        s = rng.integers(m, size=N)
    else:
        s = np.array(initial, dtype=np.int64)
        if s.shape != (N,) or s.min() < 0 or s.max() >= m:
            raise SpecInvalid("initial strategies must be N action indices")
    strategies = np.empty((params.L, N), dtype=np.int8)
    fitness = np.empty((params.L, N))
    for t in range(params.L):
        F = (A * M[s[:, None], s[None, :]]).sum(axis=1)
        strategies[t] = s
        fitness[t] = F
        if params.noise_sigma > 0:
            fitness[t] += rng.normal(0.0, params.noise_sigma, N)
        for i in rng.permutation(N):
            nb = nbrs[i]
            if nb.size == 0:
                continue
            j = nb[rng.integers(nb.size)]
            if rng.random() < fermi_prob(F[i], F[j], params.K):
                s[i] = s[j]
        flip = np.flatnonzero(rng.random(N) < params.mutation_rate)
        if flip.size:
            s[flip] = (s[flip] + rng.integers(1, m, size=flip.size)) % m
    for a in (strategies, fitness):
        a.setflags(write=False)
    return PdgTrajectory(strategies, fitness, M, params.actions, adj)


def build_pdg_regression(traj: PdgTrajectory, node: int
                         ) -> tuple[RegressionProblem, Optional[np.ndarray]]:
    """Regression ``F_i(t) = sum_j a_ij P_ij(t)`` for one focal node.

    Column ``j`` of the design holds ``P_ij(t)`` for every other node
    ``j != i`` in index order; the truth vector (when the trajectory knows its
    network) is row ``i`` of the adjacency with entry ``i`` removed.
    """
    s = traj.strategies
    others = np.delete(np.arange(traj.N), node)
    X = traj.payoff[s[:, node][:, None], s[:, others]]
    problem = RegressionProblem(X, traj.fitness[:, node], fit_intercept=False)
    truth = None
    if traj.adjacency is not None:
        truth = traj.adjacency.matrix[node, others].astype(np.int8)
    return problem, truth


def dump_pdg(traj: PdgTrajectory, path) -> None:
    """Long-format CSV: ``round,node,strategy,fitness``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["round", "node", "strategy", "fitness"])
        for t in range(traj.L):
            for i in range(traj.N):
                w.writerow([t, i, traj.actions[traj.strategies[t, i]],
                            repr(float(traj.fitness[t, i]))])


def load_pdg(path, payoff=None, actions: Sequence[str] = ("C", "D"),
             adjacency: Optional[Adjacency] = None) -> PdgTrajectory:
    from ..ingest import read_long_table

    actions = tuple(actions)
    strategies, fitness = read_long_table(Path(path), actions, need=("strategy", "fitness"))
    M = dilemma_matrix() if payoff is None else np.asarray(payoff, dtype=np.float64)
    if M.shape != (len(actions), len(actions)):
        raise ParseError("payoff matrix does not match the action alphabet")
    return PdgTrajectory(strategies, fitness, M, actions, adjacency)
