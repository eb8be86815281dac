"""Independent reference computations used to derive frozen test values.

Nothing here imports the package: every oracle is written from the
mathematical definition only.
"""
from __future__ import annotations

import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def prod_objective(b, c, a, lam):
    """0.5*a*b^2 - c*b + (lam/2)*|b(b-1)| (constant terms dropped)."""
    return 0.5 * a * b * b - c * b + 0.5 * lam * np.abs(b * (b - 1.0))


def min_objective(b, c, a, lam):
    return 0.5 * a * b * b - c * b + lam * np.minimum(np.abs(b), np.abs(b - 1.0))


def brute_argmin(f, c, a, lam, lo=-2.0, hi=3.0, points=2501, keep=3, iters=80):
    """Global 1-D minimizer by dense grid, golden-section polish and kinks.

    ``c, a, lam`` are arrays (one problem per entry).  The ``keep`` best grid
    local minima are polished inside their two neighbouring cells; the kinks
    0 and 1 are always candidates.  Returns (argmin, min value).
    """
    c, a, lam = (np.asarray(v, dtype=np.float64)[:, None] for v in (c, a, lam))
    grid = np.linspace(lo, hi, points)
    step = grid[1] - grid[0]
    F = f(grid[None, :], c, a, lam)
    interior = np.full(F.shape, False)
    interior[:, 1:-1] = (F[:, 1:-1] <= F[:, :-2]) & (F[:, 1:-1] <= F[:, 2:])
    interior[:, 0] = F[:, 0] <= F[:, 1]
    interior[:, -1] = F[:, -1] <= F[:, -2]
    G = np.where(interior, F, np.inf)
    idx = np.argsort(G, axis=1)[:, :keep]
    left = grid[idx] - step
    right = grid[idx] + step
    cc, aa, ll = c, a, lam
    x1 = right - GOLDEN * (right - left)
    x2 = left + GOLDEN * (right - left)
    f1, f2 = f(x1, cc, aa, ll), f(x2, cc, aa, ll)
    for _ in range(iters):
        move = f1 > f2
        left = np.where(move, x1, left)
        right = np.where(move, right, x2)
        x1n = right - GOLDEN * (right - left)
        x2n = left + GOLDEN * (right - left)
        x1, x2 = x1n, x2n
        f1, f2 = f(x1, cc, aa, ll), f(x2, cc, aa, ll)
    polished = 0.5 * (left + right)
    cands = np.concatenate([polished, np.zeros_like(c), np.ones_like(c)], axis=1)
    vals = f(cands, cc, aa, ll)
    # penalize candidates that were never local minima (inf grid value)
    vals[:, :keep] = np.where(np.isfinite(np.take_along_axis(G, idx, 1)),
                              vals[:, :keep], np.inf)
    best = np.argmin(vals, axis=1)
    rows = np.arange(len(best))
    return cands[rows, best], vals[rows, best]


def mcca_formula(tp, fn, ucp, fp, tn, ucn):
    """Adjusted MCC with unclassified items folded into the false counts."""
    fna, fpa = fn + ucp, fp + ucn
    den = math.sqrt((tp + fpa) * (tp + fna) * (tn + fpa) * (tn + fna))
    return 0.0 if den == 0 else (tp * tn - fpa * fna) / den


def slmin_global_min(X, Y, lam):
    """Exact global minimizer of 0.5||Y - Xb||^2 + lam*sum(min(|b|, |b-1|)).

    On each of the 4^p boxes cut by the kinks {0, 1/2, 1} the penalty is
    linear, so the objective is a convex quadratic solved by L-BFGS-B; the
    best box optimum is the global minimum.
    """
    from itertools import product

    from scipy.optimize import minimize

    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    p = X.shape[1]
    # (lower, upper, slope, offset, start) of min(|b|, |b-1|) per region
    regions = [(None, 0.0, -1.0, 0.0, -0.25), (0.0, 0.5, 1.0, 0.0, 0.25),
               (0.5, 1.0, -1.0, 1.0, 0.75), (1.0, None, 1.0, -1.0, 1.25)]
    G = X.T @ X
    XtY = X.T @ Y
    best, best_val = None, np.inf
    for combo in product(regions, repeat=p):
        slope = lam * np.array([r[2] for r in combo])
        const = lam * sum(r[3] for r in combo)
        bounds = [(r[0], r[1]) for r in combo]
        x0 = np.array([r[4] for r in combo])
        fun = lambda b: 0.5 * b @ G @ b - XtY @ b + slope @ b
        jac = lambda b: G @ b - XtY + slope
        res = minimize(fun, x0, jac=jac, method="L-BFGS-B", bounds=bounds,
                       options={"ftol": 1e-15, "gtol": 1e-12, "maxiter": 10000})
        val = res.fun + const + 0.5 * Y @ Y
        if val < best_val:
            best, best_val = res.x, val
    return best, best_val
