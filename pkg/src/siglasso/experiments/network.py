"""Node-by-node network reconstruction from a trajectory."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..dynamics import build_regression
from ..metrics import Label, MetricsReport, classify, pooled_score
from ..netgen import Adjacency
from ..solvers import MethodOptions, fit, initial_estimator

NEEDS_INIT = ("sigl", "asigl", "slprod", "slmin")


def data_length(delta: float, N: int) -> int:
    """``ceil(delta * N)`` robust to float noise such as 0.1 * 100."""
    return max(1, math.ceil(round(delta * N, 9)))


@dataclass
class NodeFits:
    """Per-method coefficient estimates (one row per focal node)."""

    estimates: dict = field(default_factory=dict)
    solutions: dict = field(default_factory=dict)
    truths: Optional[list] = None

    def directed(self, method: str, N: int) -> np.ndarray:
        """``N x N`` matrix with ``B[i, j]`` the estimate of ``a_ij``."""
        B = np.zeros((N, N))
        for i, b in enumerate(self.estimates[method]):
            B[i, np.arange(N) != i] = b
        return B

    def report(self, method: str, tau: float = 0.1) -> MetricsReport:
        return pooled_score(self.estimates[method], self.truths, tau)


def reconstruct_nodes(traj, methods: Sequence[str],
                      options: Optional[MethodOptions] = None, seed=0,
                      errors: str = "raise") -> NodeFits:
    """Solve the per-node regressions of ``traj`` with every method.

    The lasso initial estimate is computed once per node and shared by the
    methods that use it.  With ``errors="flag"`` a failing method leaves
    ``None`` in its slot instead of raising.
    """
    opts = options or MethodOptions()
    out = NodeFits(estimates={m: [] for m in methods},
                   solutions={m: [] for m in methods})
    truths = []
    for i in range(traj.N):
        problem, truth = build_regression(traj, i)
        truths.append(truth)
        node_seed = [int(seed), i] if not isinstance(seed, (list, tuple)) else [*seed, i]
        init = None
        if any(m in NEEDS_INIT for m in methods):
            init = initial_estimator(problem, "lasso", folds=opts.folds,
                                     seed=node_seed, n_lambdas=opts.n_lambdas,
                                     config=opts.solver)
        for m in methods:
            try:
                sol = fit(problem, m, beta_init=init, options=opts, seed=node_seed)
            except Exception:
                if errors != "flag":
                    raise
                sol = None
            out.solutions[m].append(sol)
            out.estimates[m].append(None if sol is None else sol.beta)
    if all(t is not None for t in truths):
        out.truths = truths
    return out


def symmetrize(B: np.ndarray, tau: float = 0.1, rule: str = "or") -> Adjacency:
    """Undirected estimate from directed estimates ``B[i, j]``.

    ``rule="or"`` keeps an edge when either direction is classified as a
    signal, ``"and"`` when both are.
    """
    sig = classify(B, tau) == Label.SIGNAL
    np.fill_diagonal(sig, False)
    if rule == "or":
        both = sig | sig.T
    elif rule == "and":
        both = sig & sig.T
    else:
        raise ValueError(f"unknown symmetrization rule {rule!r}")
    return Adjacency.from_matrix(both.astype(np.int8))


__all__ = ["NEEDS_INIT", "NodeFits", "data_length", "reconstruct_nodes",
           "symmetrize"]
