"""End-to-end estimation methods: initial estimate, tuning and final solve.

A *method* is what the experiments compare.  ``slprod``/``slmin`` need no
tuning (AUTO lambda); ``asigl`` tunes only ``alpha`` at a large lambda;
``sigl`` tunes ``(lambda_1, lambda_2)`` on a 2-D grid; ``lasso`` tunes its
single lambda.  The lasso estimate is the default warm start everywhere.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from ..errors import SpecInvalid
from ..problem import AUTO, Kind, PenaltySpec, RegressionProblem, Solution
from .coordinate import SolverConfig, solve
from .tuning import (ALPHA_GRID, asigl_grid, cross_validate, initial_estimator,
                     lasso_grid, sigl_grid)

METHODS = ("lasso", "sigl", "asigl", "slprod", "slmin")


@dataclass(frozen=True)
class MethodOptions:
    folds: int = 5
    sigl_grid_size: int = 5
    alpha_grid: Sequence[float] = ALPHA_GRID
    n_lambdas: int = 20
    solver: SolverConfig = SolverConfig()


def fit(problem: RegressionProblem, method: str, *,
        beta_init: Optional[np.ndarray] = None,
        options: Optional[MethodOptions] = None, seed=0) -> Solution:
    """Run ``method`` on ``problem``.

    ``beta_init`` is the preliminary (lasso) estimate; it is computed by
    cross-validation when omitted.  ``elapsed_seconds`` of the result covers
    everything done inside this call, including tuning.
    """
    if method not in METHODS:
        raise SpecInvalid(f"unknown method {method!r}; choose from {METHODS}")
    opts = options or MethodOptions()
    cfg = opts.solver
    t0 = time.perf_counter()

    if method == "lasso":
        grid = lasso_grid(problem, opts.n_lambdas)
        best, _ = cross_validate(problem, Kind.LASSO, grid, opts.folds, seed, cfg)
        sol = solve(problem, best, cfg)
    elif method == "sigl":
        grid = sigl_grid(problem, opts.sigl_grid_size)
        best, _ = cross_validate(problem, Kind.SIGL, grid, opts.folds, seed, cfg)
        sol = solve(problem, best, cfg.with_init(beta_init))
    else:
        if beta_init is None:
            beta_init = initial_estimator(problem, "lasso", folds=opts.folds,
                                          seed=seed, n_lambdas=opts.n_lambdas,
                                          config=cfg)
        if method == "asigl":
            grid = asigl_grid(beta_init, opts.alpha_grid)
            if len(grid) == 1:
                best = grid[0]
            else:
                best, _ = cross_validate(problem, Kind.ASIGL, grid, opts.folds,
                                         seed, cfg)
            sol = solve(problem, best, cfg.with_init(beta_init))
        else:
            spec = PenaltySpec(Kind(method), AUTO)
            sol = solve(problem, spec, cfg.with_init(beta_init))

    return replace(sol, elapsed_seconds=time.perf_counter() - t0)
