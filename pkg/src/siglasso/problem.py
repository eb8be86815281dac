"""Regression problems, penalty definitions and the penalized objective.

Every solver consumes a :class:`RegressionProblem` and a :class:`PenaltySpec`
and returns a :class:`Solution`.  Problems are immutable: arrays are copied on
construction and flagged read-only, so they can be shared between threads.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatch, NonFiniteEntry, SpecInvalid

AUTO = "auto"


class Kind(str, enum.Enum):
    LASSO = "lasso"
    SIGL = "sigl"
    ASIGL = "asigl"
    SLPROD = "slprod"
    SLMIN = "slmin"


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RegressionProblem:
    """Linear model ``Y = X beta + eps`` with observations in rows.

    When ``fit_intercept`` is true the solvers work on mean-centered copies of
    ``X`` and ``Y`` (see :attr:`design`) and the intercept is recovered
    afterwards from the column means.
    """

    X: np.ndarray
    Y: np.ndarray
    fit_intercept: bool = False
    column_norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        X = np.array(self.X, dtype=np.float64, order="F", copy=True)
        Y = np.array(self.Y, dtype=np.float64, copy=True)
        if X.ndim != 2:
            raise DimensionMismatch(f"X must be 2-D, got shape {X.shape}")
        if Y.ndim == 2 and Y.shape[1] == 1:
            Y = Y[:, 0].copy()
        if Y.ndim != 1:
            raise DimensionMismatch(f"Y must be 1-D, got shape {Y.shape}")
        if Y.shape[0] != X.shape[0]:
            raise DimensionMismatch(
                f"Y has {Y.shape[0]} entries but X has {X.shape[0]} rows")
        if not (np.isfinite(X).all() and np.isfinite(Y).all()):
            raise NonFiniteEntry("X and Y must not contain NaN or Inf")
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "Y", _frozen(Y))
        object.__setattr__(self, "fit_intercept", bool(self.fit_intercept))
        norms = np.einsum("ij,ij->j", X, X)
        object.__setattr__(self, "column_norms", _frozen(norms))

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @cached_property
    def design(self) -> "Design":
        """Working arrays the solvers iterate on (centered if needed)."""
        if not self.fit_intercept:
            return Design(self.X, self.Y, np.zeros(self.p), 0.0,
                          self.column_norms)
        x_mean = self.X.mean(axis=0)
        y_mean = float(self.Y.mean())
        Xc = np.asfortranarray(self.X - x_mean)
        Yc = self.Y - y_mean
        norms = np.einsum("ij,ij->j", Xc, Xc)
        return Design(_frozen(Xc), _frozen(Yc), _frozen(x_mean), y_mean,
                      _frozen(norms))

    def subset(self, rows) -> "RegressionProblem":
        rows = np.asarray(rows)
        return RegressionProblem(self.X[rows], self.Y[rows], self.fit_intercept)

    def head(self, n_rows: int) -> "RegressionProblem":
        return self.subset(np.arange(min(n_rows, self.n)))

    def intercept_for(self, beta: np.ndarray) -> float:
        if not self.fit_intercept:
            return 0.0
        d = self.design
        return float(d.y_mean - d.x_mean @ beta)

    def predict(self, beta: np.ndarray, intercept: float = 0.0) -> np.ndarray:
        return self.X @ beta + intercept


@dataclass(frozen=True, eq=False)
class Design:
    X: np.ndarray
    Y: np.ndarray
    x_mean: np.ndarray
    y_mean: float
    norms: np.ndarray


@dataclass(frozen=True, eq=False)
class PenaltySpec:
    """Penalty family and its parameters.

    ``lam`` is the main weight (``lambda_1`` for SigL, ``lambda`` for ASigL
    where ``lambda_1 = alpha * lam`` and ``lambda_2 = lam``).  The sentinel
    :data:`AUTO` asks the solver to pick a value large enough that the
    non-convex penalties (and ASigL) return exact 0/1 coefficients.
    """

    kind: Kind
    lam: Union[float, str] = 0.0
    lam2: float = 0.0
    alpha: Optional[float] = None
    weights2: Optional[np.ndarray] = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if isinstance(self.lam, str):
            if self.lam != AUTO:
                raise SpecInvalid(f"unknown lambda sentinel {self.lam!r}")
            if kind not in (Kind.SLPROD, Kind.SLMIN, Kind.ASIGL):
                raise SpecInvalid(f"AUTO lambda is not defined for {kind.value}")
        elif not (np.isfinite(self.lam) and self.lam >= 0):
            raise SpecInvalid(f"lambda must be finite and >= 0, got {self.lam}")
        if self.lam2 != 0.0 and kind is not Kind.SIGL:
            raise SpecInvalid("lam2 is only used by SigL")
        if not (np.isfinite(self.lam2) and self.lam2 >= 0):
            raise SpecInvalid(f"lam2 must be finite and >= 0, got {self.lam2}")
        if kind is Kind.ASIGL:
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise SpecInvalid(f"ASigL needs alpha in (0, 1), got {self.alpha}")
        elif self.alpha is not None:
            raise SpecInvalid("alpha is only used by ASigL")
        if self.weights2 is not None:
            if kind is not Kind.ASIGL:
                raise SpecInvalid("weights2 is only used by ASigL")
            w = np.array(self.weights2, dtype=np.float64).ravel()
            if not (np.isfinite(w).all() and (w >= 0).all()):
                raise SpecInvalid("weights2 must be finite and non-negative")
            object.__setattr__(self, "weights2", _frozen(w))

    @property
    def is_auto(self) -> bool:
        return isinstance(self.lam, str)

    def with_lam(self, lam: float) -> "PenaltySpec":
        return PenaltySpec(self.kind, lam, self.lam2, self.alpha, self.weights2)

    def coordinate_weights(self, p: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-coordinate ``(l1, l2)`` multipliers of ``|b|`` and ``|b - 1|``.

        For SLProd/SLMin ``l1`` carries ``lambda`` and ``l2`` is unused.
        """
        if self.is_auto:
            raise SpecInvalid("resolve AUTO lambda before evaluating weights")
        lam = float(self.lam)
        l1 = np.full(p, lam)
        l2 = np.zeros(p)
        if self.kind is Kind.SIGL:
            l2[:] = self.lam2
        elif self.kind is Kind.ASIGL:
            l1[:] = self.alpha * lam
            w2 = np.ones(p) if self.weights2 is None else self.weights2
            if w2.shape[0] != p:
                raise DimensionMismatch(
                    f"weights2 has length {w2.shape[0]}, expected {p}")
            l2[:] = lam * w2
        return l1, l2

    def describe(self) -> dict:
        out = {"kind": self.kind.value, "lam": self.lam}
        if self.kind is Kind.SIGL:
            out["lam2"] = self.lam2
        if self.kind is Kind.ASIGL:
            out["alpha"] = self.alpha
        return out


@dataclass(frozen=True, eq=False)
class Solution:
    beta: np.ndarray
    intercept: float
    iterations: int
    converged: bool
    objective: float
    elapsed_seconds: float
    spec: Optional[PenaltySpec] = None
    history: Optional[tuple] = None


def validate_problem(problem: RegressionProblem) -> list[int]:
    """Check the problem invariants and return the indices of zero columns.

    Shape and finiteness are enforced at construction; this re-checks them
    (cheaply) and additionally reports columns with ``x_k'x_k == 0``, which
    carry no information about their coefficient.
    """
    X, Y = problem.X, problem.Y
    if X.ndim != 2 or Y.ndim != 1 or X.shape[0] != Y.shape[0]:
        raise DimensionMismatch("inconsistent X/Y shapes")
    if not (np.isfinite(X).all() and np.isfinite(Y).all()):
        raise NonFiniteEntry("X and Y must not contain NaN or Inf")
    return [int(k) for k in np.flatnonzero(problem.column_norms == 0.0)]


def penalty_value(beta: np.ndarray, spec: PenaltySpec) -> float:
    beta = np.asarray(beta, dtype=np.float64)
    l1, l2 = spec.coordinate_weights(beta.shape[0])
    if spec.kind is Kind.SLPROD:
        # lambda/2 weight: the convention under which the closed-form
        # coordinate update is the exact univariate minimizer
        return float(0.5 * l1 @ np.abs(beta * (beta - 1.0)))
    if spec.kind is Kind.SLMIN:
        return float(l1 @ np.minimum(np.abs(beta), np.abs(beta - 1.0)))
    return float(l1 @ np.abs(beta) + l2 @ np.abs(beta - 1.0))


def objective_value(problem: RegressionProblem, beta, spec: PenaltySpec) -> float:
    """``0.5 * ||Y - X beta||^2 + penalty(beta)`` on the working design.

    With ``fit_intercept`` the residual is taken on centered data, i.e. at the
    optimal intercept for ``beta``.
    """
    beta = np.asarray(beta, dtype=np.float64)
    if beta.ndim != 1 or beta.shape[0] != problem.p:
        raise DimensionMismatch(
            f"beta has shape {beta.shape}, expected ({problem.p},)")
    d = problem.design
    r = d.Y - d.X @ beta
    return float(0.5 * r @ r) + penalty_value(beta, spec)


def load_problem_csv(x_path, y_path, fit_intercept: bool = False) -> RegressionProblem:
    X = np.loadtxt(Path(x_path), delimiter=",", ndmin=2, dtype=np.float64)
    Y = np.loadtxt(Path(y_path), delimiter=",", ndmin=1, dtype=np.float64)
    return RegressionProblem(X, Y, fit_intercept)


def save_problem_csv(problem: RegressionProblem, x_path, y_path) -> None:
    np.savetxt(Path(x_path), problem.X, delimiter=",", fmt="%.17g")
    np.savetxt(Path(y_path), problem.Y, fmt="%.17g")
