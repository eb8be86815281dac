"""Synthetic linear-regression scenarios with 0/1 coefficients."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from ..errors import SpecInvalid
from ..problem import RegressionProblem

ERROR_MODELS = ("gaussian", "exponential", "gamma", "ar1")


@dataclass(frozen=True)
class CaseSpec:
    """One simulation cell.

    Rows of X are N(0, S) with ``S_ij = design_corr**|i-j|``; the first ``p1``
    coefficients are 1 and the rest 0.  ``error_model`` selects centered
    Gaussian (sd ``sigma``), Exp(scale ``sigma``), Gamma(4, scale
    ``sigma/2``) or AR(1) noise with N(0, sigma^2) innovations.
    """

    n: int
    p: int
    p1: int
    sigma: float
    design_corr: float = 0.5
    error_model: str = "gaussian"
    rho: float = 0.0
    zero_columns: int = 0
    fit_intercept: bool = True

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise SpecInvalid("n and p must be positive")
        if not 0 <= self.p1 <= self.p:
            raise SpecInvalid(f"p1 = {self.p1} must lie in [0, p]")
        if not self.sigma > 0:
            raise SpecInvalid("sigma must be > 0")
        if not -1 < self.design_corr < 1:
            raise SpecInvalid("design correlation must lie in (-1, 1)")
        if self.error_model not in ERROR_MODELS:
            raise SpecInvalid(f"unknown error model {self.error_model!r}")
        if not -1 < self.rho < 1:
            raise SpecInvalid("AR(1) rho must lie in (-1, 1)")
        if not 0 <= self.zero_columns <= self.p - self.p1:
            raise SpecInvalid("zero_columns must fit among the non-signal columns")

    def label(self) -> str:
        return f"({self.n},{self.p},{self.p1},{self.sigma:g})"


def correlated_design(n: int, p: int, r: float, rng: np.random.Generator) -> np.ndarray:
    chol = np.linalg.cholesky(toeplitz(r ** np.arange(p)))
    return rng.standard_normal((n, p)) @ chol.T


def draw_errors(spec: CaseSpec, rng: np.random.Generator) -> np.ndarray:
    n, s = spec.n, spec.sigma
    if spec.error_model == "gaussian":
        return rng.normal(0.0, s, n)
    if spec.error_model == "exponential":
        return rng.exponential(s, n) - s
    if spec.error_model == "gamma":
        return rng.gamma(4.0, s / 2.0, n) - 2.0 * s
    u = rng.normal(0.0, s, n)
    eps = np.empty(n)
    # stationary start so every lag-1 pair has correlation rho
    eps[0] = u[0] / np.sqrt(1.0 - spec.rho ** 2)
    for i in range(1, n):
        eps[i] = spec.rho * eps[i - 1] + u[i]
    return eps


def gen_case(spec: CaseSpec, seed=None) -> tuple[RegressionProblem, np.ndarray]:
    rng = np.random.default_rng(seed)
    X = correlated_design(spec.n, spec.p, spec.design_corr, rng)
    truth = np.zeros(spec.p, dtype=np.int8)
    truth[:spec.p1] = 1
    if spec.zero_columns:
        cols = rng.choice(np.arange(spec.p1, spec.p), spec.zero_columns,
                          replace=False)
        X[:, cols] = 0.0
    Y = X @ truth + draw_errors(spec, rng)
    return RegressionProblem(X, Y, spec.fit_intercept), truth
