"""Coordinate-descent solvers for the lasso and signal-lasso family."""
from ._kernels import (additive_update, slmin_update, slprod_update,
                       soft_threshold)
from .coordinate import (CoordinateState, SolverConfig, auto_lambda, resolve,
                         solve)
from .methods import METHODS, MethodOptions, fit
from .tuning import (ALPHA_GRID, CVRow, asigl_grid, cross_validate,
                     initial_estimator, kfold_indices, lambda_max, lasso_grid,
                     sigl_grid)

__all__ = [
    "ALPHA_GRID", "CVRow", "CoordinateState", "METHODS", "MethodOptions",
    "SolverConfig", "additive_update", "asigl_grid", "auto_lambda",
    "cross_validate", "fit", "initial_estimator", "kfold_indices",
    "lambda_max", "lasso_grid", "resolve", "sigl_grid", "slmin_update",
    "slprod_update", "soft_threshold", "solve",
]
