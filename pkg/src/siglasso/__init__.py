"""Signal lasso: penalized regression for coefficients known to be 0 or 1.

The package provides coordinate-descent solvers (lasso, SigL, ASigL, SLProd,
SLMin), classification metrics with an unclassified band, random network
generators, game and oscillator dynamics, and simulation drivers for
reconstructing networks from time series.
"""
from .errors import (AlphabetMismatch, DegreeOutOfRange, DimensionMismatch,
                     EmptyGrid, NonBinaryTruth, NonFiniteEntry, ParseError,
                     ShapeMismatch, SignalLassoError, SingularSystem,
                     SpecInvalid)
from .metrics import (ConfusionTable, Label, MetricsReport, classify,
                      confusion, mcc, mcca, pooled_score, score)
from .netgen import Adjacency, gen_ba, gen_er, gen_ws, generate
from .problem import (AUTO, Kind, PenaltySpec, RegressionProblem, Solution,
                      objective_value)
from .solvers import (MethodOptions, SolverConfig, cross_validate, fit,
                      initial_estimator, slmin_update, slprod_update, solve)

__version__ = "0.1.0"

__all__ = [
    "AUTO", "Adjacency", "AlphabetMismatch", "ConfusionTable",
    "DegreeOutOfRange", "DimensionMismatch", "EmptyGrid", "Kind", "Label",
    "MethodOptions", "MetricsReport", "NonBinaryTruth", "NonFiniteEntry",
    "ParseError", "PenaltySpec", "RegressionProblem", "ShapeMismatch",
    "SignalLassoError", "SingularSystem", "Solution", "SolverConfig",
    "SpecInvalid", "classify", "confusion", "cross_validate", "fit", "gen_ba",
    "gen_er", "gen_ws", "generate", "initial_estimator", "mcc", "mcca",
    "objective_value", "pooled_score", "score", "slmin_update",
    "slprod_update", "solve",
]
