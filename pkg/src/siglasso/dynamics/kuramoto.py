"""Kuramoto phase oscillators integrated with the explicit Euler scheme."""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ..errors import ParseError, SpecInvalid
from ..netgen import Adjacency
from ..problem import RegressionProblem


@dataclass(frozen=True, eq=False)
class KuramotoParams:
    """Coupling ``c``, Euler step ``h`` and ``L`` steps.

    ``omega`` defaults to i.i.d. U[-1, 1] and ``theta0`` to U[0, 2*pi), both
    drawn from the simulation seed.  ``noise_sigma`` scales Euler-Maruyama
    process noise, i.e. each step adds N(0, noise_sigma**2 * h).

    With ``restart_every = s`` the ``L`` steps are split into segments of
    ``s`` steps, each started from fresh U[0, 2*pi) phases (``theta0``, when
    given, seeds only the first).  Strong coupling locks the phases within a
    few steps, after which one long trajectory carries almost no information
    about the network; short transients from random states do.
    """

    c: float = 10.0
    h: float = 0.01
    omega: Optional[np.ndarray] = None
    noise_sigma: float = 0.0
    L: int = 100
    theta0: Optional[np.ndarray] = None
    restart_every: Optional[int] = None

    def __post_init__(self):
        if not self.h > 0:
            raise SpecInvalid("step h must be > 0")
        if self.c == 0:
            raise SpecInvalid("coupling c must be non-zero")
        if self.noise_sigma < 0:
            raise SpecInvalid("noise_sigma must be >= 0")
        if self.L < 1:
            raise SpecInvalid("L must be >= 1")
        if self.restart_every is not None and self.restart_every < 1:
            raise SpecInvalid("restart_every must be >= 1")


@dataclass(frozen=True, eq=False)
class KuramotoTrajectory:
    """Phases ``theta`` (rows are time points).

    ``segment`` labels each row with its run; consecutive rows of the same
    segment form one Euler step.  ``None`` means a single run, i.e. ``L + 1``
    rows for ``L`` steps.
    """

    theta: np.ndarray
    omega: np.ndarray
    c: float
    h: float
    adjacency: Optional[Adjacency] = None
    segment: Optional[np.ndarray] = None

    def steps(self) -> np.ndarray:
        """Row indices ``t`` such that ``(t, t + 1)`` is an Euler step."""
        rows = np.arange(self.theta.shape[0] - 1)
        if self.segment is None:
            return rows
        return rows[self.segment[1:] == self.segment[:-1]]

    @property
    def L(self) -> int:
        return len(self.steps())

    @property
    def N(self) -> int:
        return self.theta.shape[1]

    def head(self, L: int) -> "KuramotoTrajectory":
        """The first ``L`` steps."""
        if L >= self.L:
            return self
        end = self.steps()[L - 1] + 2 if L > 0 else 1
        seg = None if self.segment is None else self.segment[:end]
        return KuramotoTrajectory(self.theta[:end], self.omega, self.c, self.h,
                                  self.adjacency, seg)


def coupling(A: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """``sum_j a_ij sin(theta_j - theta_i)`` for every ``i``."""
    s, c = np.sin(theta), np.cos(theta)
    return (A @ s) * c - (A @ c) * s


def simulate_kuramoto(adj: Adjacency, params: KuramotoParams, seed=None
                      ) -> KuramotoTrajectory:
    """Phase series of shape ``(L + 1, N)`` (unwrapped).

    With restarts the result has one extra row per additional segment.
    """
    rng = np.random.default_rng(seed)
    N = adj.n
    A = adj.matrix.astype(np.float64)
    max_deg = int(A.sum(axis=1).max(initial=0))
    if abs(params.c) * params.h * max_deg > 0.5:
        warnings.warn(
            f"c*h*max_degree = {abs(params.c) * params.h * max_deg:.3g} > 0.5; "
            "Euler steps may be inaccurate", RuntimeWarning, stacklevel=2)
    omega = (rng.uniform(-1.0, 1.0, N) if params.omega is None
             else np.array(params.omega, dtype=np.float64))
    theta = (rng.uniform(0.0, 2 * np.pi, N) if params.theta0 is None
             else np.array(params.theta0, dtype=np.float64))
    if omega.shape != (N,) or theta.shape != (N,):
        raise SpecInvalid("omega and theta0 must have one entry per node")
    s = params.restart_every or params.L
    lengths = [min(s, params.L - k) for k in range(0, params.L, s)]
    out = np.empty((params.L + len(lengths), N))
    seg = np.repeat(np.arange(len(lengths)), np.array(lengths) + 1)
    step_sd = params.noise_sigma * np.sqrt(params.h)
    r = 0
    for k, n_steps in enumerate(lengths):
        if k > 0:
            theta = rng.uniform(0.0, 2 * np.pi, N)
        out[r] = theta
        for _ in range(n_steps):
            theta = theta + params.h * (omega + params.c * coupling(A, theta))
            if step_sd > 0:
                theta = theta + rng.normal(0.0, step_sd, N)
            r += 1
            out[r] = theta
        r += 1
    out.setflags(write=False)
    omega.setflags(write=False)
    if params.restart_every is None:
        seg = None
    else:
        seg.setflags(write=False)
    return KuramotoTrajectory(out, omega, float(params.c), float(params.h), adj, seg)


def build_kuramoto_regression(traj: KuramotoTrajectory, node: int
                              ) -> tuple[RegressionProblem, Optional[np.ndarray]]:
    """Finite-difference regression for node ``i``.

    ``Y_t = (theta_i(t+1) - theta_i(t)) / h`` and ``X[t, j] = c sin(theta_j(t) -
    theta_i(t))`` over ``j != i``; the intercept absorbs ``omega_i``.
    """
    th = traj.theta
    t = traj.steps()
    others = np.delete(np.arange(traj.N), node)
    Y = (th[t + 1, node] - th[t, node]) / traj.h
    X = traj.c * np.sin(th[t][:, others] - th[t, node][:, None])
    problem = RegressionProblem(X, Y, fit_intercept=True)
    truth = None
    if traj.adjacency is not None:
        truth = traj.adjacency.matrix[node, others].astype(np.int8)
    return problem, truth


def dump_kuramoto(traj: KuramotoTrajectory, path) -> None:
    """Long-format CSV: ``step,node,theta`` (plus ``segment`` with restarts)."""
    seg = traj.segment
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "node", "theta"] + ([] if seg is None else ["segment"]))
        for t in range(traj.theta.shape[0]):
            for i in range(traj.N):
                row = [t, i, repr(float(traj.theta[t, i]))]
                w.writerow(row if seg is None else row + [int(seg[t])])


def load_kuramoto(path, c: float, h: float, omega=None,
                  adjacency: Optional[Adjacency] = None) -> KuramotoTrajectory:
    rows = []
    with open(Path(path), newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"step", "node", "theta"} <= set(reader.fieldnames):
            raise ParseError(f"{path}: expected columns step,node,theta")
        segmented = "segment" in reader.fieldnames
        for rec in reader:
            try:
                rows.append((int(rec["step"]), int(rec["node"]), float(rec["theta"]),
                             int(rec["segment"]) if segmented else 0))
            except (TypeError, ValueError) as exc:
                raise ParseError(f"{path}: bad row {rec}: {exc}") from None
    if not rows:
        raise ParseError(f"{path}: no data rows")
    steps = 1 + max(r[0] for r in rows)
    N = 1 + max(r[1] for r in rows)
    if len(rows) != steps * N:
        raise ParseError(f"{path}: expected {steps * N} rows, found {len(rows)}")
    theta = np.full((steps, N), np.nan)
    seg = np.full(steps, -1)
    for t, i, v, k in rows:
        theta[t, i] = v
        if seg[t] not in (-1, k):
            raise ParseError(f"{path}: step {t} has conflicting segment labels")
        seg[t] = k
    if np.isnan(theta).any():
        raise ParseError(f"{path}: missing (step, node) entries")
    om = np.full(N, np.nan) if omega is None else np.asarray(omega, dtype=np.float64)
    return KuramotoTrajectory(theta, om, float(c), float(h), adjacency,
                              seg if segmented else None)
