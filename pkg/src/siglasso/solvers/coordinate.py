"""Cyclic coordinate descent for every penalty kind."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import DimensionMismatch, SpecInvalid
from ..problem import (AUTO, Kind, PenaltySpec, RegressionProblem, Solution,
                       objective_value)
from . import _kernels

_CODES = {
    Kind.LASSO: _kernels.CODE_LASSO,
    Kind.SIGL: _kernels.CODE_ADDITIVE,
    Kind.ASIGL: _kernels.CODE_ADDITIVE,
    Kind.SLPROD: _kernels.CODE_SLPROD,
    Kind.SLMIN: _kernels.CODE_SLMIN,
}


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rule and warm start.

    Parameters
    ----------
    max_iterations : int
        Maximum number of full coordinate sweeps.
    tolerance : float
        Stop once the largest coefficient change within a sweep is below it.
    beta_init : ndarray, optional
        Warm start; zeros when omitted.
    large_lambda_factor : float
        Multiplier applied when an AUTO lambda is resolved.
    """

    max_iterations: int = 500
    tolerance: float = 1e-6
    beta_init: Optional[np.ndarray] = None
    large_lambda_factor: float = 100.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise SpecInvalid("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise SpecInvalid("tolerance must be > 0")
        if not self.large_lambda_factor > 1:
            raise SpecInvalid("large_lambda_factor must be > 1")

    def with_init(self, beta_init) -> "SolverConfig":
        return SolverConfig(self.max_iterations, self.tolerance, beta_init,
                            self.large_lambda_factor)


@dataclass
class CoordinateState:
    residual: np.ndarray
    beta: np.ndarray


def auto_lambda(problem: RegressionProblem, factor: float = 100.0) -> float:
    """Lambda far beyond every switch point of the 0/1-seeking updates.

    ``factor * max_k x_k'x_k`` clears the ``x_k'x_k > lambda`` switches of the
    product update and the dead zones of the minimum update.  The
    ``||x_k|| ||Y||`` term additionally bounds ``|x_k'eps_k|`` so the outer
    branches cannot escape [0, 1] when the response is large relative to X.
    """
    d = problem.design
    col = np.sqrt(d.norms)
    scale = max(float(d.norms.max(initial=0.0)),
                float(col.max(initial=0.0) * np.linalg.norm(d.Y)))
    if scale == 0.0:
        scale = 1.0
    return factor * scale


def resolve(problem: RegressionProblem, spec: PenaltySpec,
            factor: float = 100.0) -> PenaltySpec:
    if spec.is_auto:
        return spec.with_lam(auto_lambda(problem, factor))
    return spec


def solve(problem: RegressionProblem, spec: PenaltySpec,
          config: Optional[SolverConfig] = None, *,
          track_objective: bool = False,
          callback: Optional[Callable[[int, CoordinateState], None]] = None
          ) -> Solution:
    """Minimize ``0.5*||Y - X b||^2 + penalty(b)`` by cyclic coordinate descent.

    Parameters
    ----------
    problem : RegressionProblem
    spec : PenaltySpec
        ``spec.lam`` may be :data:`~siglasso.problem.AUTO` for SLProd, SLMin
        and ASigL.
    config : SolverConfig, optional
    track_objective : bool
        Record the objective before the first sweep and after every sweep in
        ``Solution.history``.
    callback : callable, optional
        Called as ``callback(sweep_index, state)`` after every sweep.

    Returns
    -------
    Solution
        ``converged`` is False when ``max_iterations`` was exhausted.
    """
    config = config or SolverConfig()
    t0 = time.perf_counter()
    spec = resolve(problem, spec, config.large_lambda_factor)
    d = problem.design
    p = problem.p
    if config.beta_init is None:
        beta = np.zeros(p)
    else:
        beta = np.array(config.beta_init, dtype=np.float64).ravel()
        if beta.shape[0] != p:
            raise DimensionMismatch(
                f"beta_init has length {beta.shape[0]}, expected {p}")
    resid = d.Y - d.X @ beta
    l1, l2 = spec.coordinate_weights(p)
    code = _CODES[spec.kind]

    history = None
    if track_objective or callback is not None:
        history = [objective_value(problem, beta, spec)] if track_objective else None
        state = CoordinateState(resid, beta)
        iterations, converged = 0, False
        while iterations < config.max_iterations:
            iterations += 1
            delta = _kernels.sweep(d.X, d.norms, beta, resid, code, l1, l2)
            if track_objective:
                history.append(objective_value(problem, beta, spec))
            if callback is not None:
                callback(iterations, state)
            if delta < config.tolerance:
                converged = True
                break
        history = tuple(history) if history is not None else None
    else:
        iterations, converged = _kernels.solve_loop(
            d.X, d.norms, beta, resid, code, l1, l2,
            config.max_iterations, config.tolerance)

    objective = objective_value(problem, beta, spec)
    return Solution(beta=beta, intercept=problem.intercept_for(beta),
                    iterations=int(iterations), converged=bool(converged),
                    objective=objective,
                    elapsed_seconds=time.perf_counter() - t0,
                    spec=spec, history=history)


__all__ = ["AUTO", "CoordinateState", "SolverConfig", "auto_lambda", "resolve",
           "solve"]
