"""Initial estimators and k-fold cross-validation over penalty grids."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import EmptyGrid, SingularSystem, SpecInvalid
from ..problem import AUTO, Kind, PenaltySpec, RegressionProblem
from .coordinate import SolverConfig, solve

ALPHA_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))


def lambda_max(problem: RegressionProblem) -> float:
    """Smallest lasso penalty whose solution is identically zero."""
    d = problem.design
    if problem.p == 0:
        return 0.0
    return float(np.max(np.abs(d.X.T @ d.Y)))


def lasso_grid(problem: RegressionProblem, n_lambdas: int = 20,
               min_ratio: Optional[float] = None) -> list[PenaltySpec]:
    """Log-spaced lasso penalties from ``lambda_max`` downwards."""
    lmax = lambda_max(problem)
    if lmax == 0.0:
        return [PenaltySpec(Kind.LASSO, 0.0)]
    if min_ratio is None:
        min_ratio = 1e-3 if problem.n > problem.p else 1e-2
    return [PenaltySpec(Kind.LASSO, float(l))
            for l in lmax * np.geomspace(1.0, min_ratio, n_lambdas)]


def sigl_grid(problem: RegressionProblem, size: int = 5,
              ratios: tuple = (0.5, 0.005)) -> list[PenaltySpec]:
    """Square ``(lambda_1, lambda_2)`` grid scaled by ``lambda_max``."""
    lmax = lambda_max(problem) or 1.0
    vals = lmax * np.geomspace(ratios[0], ratios[1], size)
    return [PenaltySpec(Kind.SIGL, float(l1), lam2=float(l2))
            for l1 in vals for l2 in vals]


def asigl_grid(weights2, alphas: Sequence[float] = ALPHA_GRID,
               lam=AUTO) -> list[PenaltySpec]:
    w = np.abs(np.asarray(weights2, dtype=np.float64))
    return [PenaltySpec(Kind.ASIGL, lam, alpha=float(a), weights2=w)
            for a in alphas]


def kfold_indices(n: int, folds: int, seed) -> list[np.ndarray]:
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(part) for part in np.array_split(perm, folds)]


@dataclass(frozen=True)
class CVRow:
    spec: PenaltySpec
    mean_mse: float
    se_mse: float
    fold_mse: tuple


def cross_validate(problem: RegressionProblem, kind, grid: Sequence[PenaltySpec],
                   folds: int = 5, seed=0,
                   config: Optional[SolverConfig] = None
                   ) -> tuple[PenaltySpec, list[CVRow]]:
    """Pick the grid entry with the lowest mean held-out squared error.

    Fold assignment is a seeded permutation, so the choice is deterministic.
    Within a fold the grid is solved in order with warm starts.  Ties go to
    the earliest grid entry.
    """
    kind = Kind(kind)
    grid = list(grid)
    if not grid:
        raise EmptyGrid("cross-validation grid is empty")
    if any(s.kind is not kind for s in grid):
        raise SpecInvalid(f"grid contains specs that are not {kind.value}")
    if folds < 2:
        raise SpecInvalid("cross-validation needs at least 2 folds")
    folds = min(folds, problem.n)
    config = config or SolverConfig()
    parts = kfold_indices(problem.n, folds, seed)
    errors = np.zeros((len(grid), folds))
    all_rows = np.arange(problem.n)
    for f, val in enumerate(parts):
        train = np.setdiff1d(all_rows, val, assume_unique=True)
        sub = problem.subset(train)
        held_X, held_Y = problem.X[val], problem.Y[val]
        beta = None
        for g, spec in enumerate(grid):
            sol = solve(sub, spec, config.with_init(beta))
            beta = sol.beta
            resid = held_Y - held_X @ sol.beta - sol.intercept
            errors[g, f] = float(np.mean(resid ** 2))
    means = errors.mean(axis=1)
    ses = errors.std(axis=1, ddof=1) / np.sqrt(folds)
    table = [CVRow(s, float(m), float(e), tuple(errors[g]))
             for g, (s, m, e) in enumerate(zip(grid, means, ses))]
    best = int(np.argmin(means))
    return grid[best], table


def _ridge(problem: RegressionProblem, alpha: Optional[float]) -> np.ndarray:
    d = problem.design
    if alpha is None:
        alpha = 1e-2 * float(d.norms.mean()) if problem.p else 1.0
        alpha = alpha or 1.0
    G = d.X.T @ d.X + alpha * np.eye(problem.p)
    return np.linalg.solve(G, d.X.T @ d.Y)


def _ols(problem: RegressionProblem) -> np.ndarray:
    d = problem.design
    beta, _, rank, _ = np.linalg.lstsq(d.X, d.Y, rcond=None)
    if rank < problem.p:
        raise SingularSystem(
            f"design has rank {rank} < p = {problem.p}; use ridge instead")
    return beta


def initial_estimator(problem: RegressionProblem, method: str = "lasso", *,
                      lam: Optional[float] = None, folds: int = 5, seed=0,
                      n_lambdas: int = 20, ridge_alpha: Optional[float] = None,
                      config: Optional[SolverConfig] = None) -> np.ndarray:
    """Preliminary estimate used as warm start and for ASigL weights.

    ``method`` is one of ``"lasso"`` (cross-validated unless ``lam`` is
    given), ``"ols"`` (raises :class:`SingularSystem` on a rank-deficient
    design), ``"ridge"``, or ``"ols_or_ridge"`` which falls back to ridge
    whenever OLS is not identifiable.
    """
    if method == "ols":
        return _ols(problem)
    if method == "ridge":
        return _ridge(problem, ridge_alpha)
    if method == "ols_or_ridge":
        if problem.p < problem.n:
            try:
                return _ols(problem)
            except SingularSystem:
                pass
        return _ridge(problem, ridge_alpha)
    if method != "lasso":
        raise SpecInvalid(f"unknown initial estimator {method!r}")
    config = config or SolverConfig()
    if lam is None:
        grid = lasso_grid(problem, n_lambdas)
        if len(grid) == 1:
            return np.zeros(problem.p)
        best, _ = cross_validate(problem, Kind.LASSO, grid, folds, seed, config)
        lam = float(best.lam)
    return solve(problem, PenaltySpec(Kind.LASSO, lam), config).beta
