"""Compiled coordinate-descent kernels.

The scalar update rules are plain ``njit`` functions so they can be called
from Python as well as from the sweep loop.  Every update is the exact
minimizer of the univariate problem

    0.5 * a * b**2 - c * b + penalty(b)

where ``a = x_k'x_k`` and ``c = x_k'eps_k`` (``eps_k`` is the partial
residual that excludes coordinate ``k``).
"""
from numba import njit

CODE_LASSO = 0
CODE_ADDITIVE = 1
CODE_SLPROD = 2
CODE_SLMIN = 3


@njit(cache=True)
def soft_threshold(z, t):
    if z > t:
        return z - t
    if z < -t:
        return z + t
    return 0.0


@njit(cache=True)
def slprod_update(xke, xkxk, lam):
    """Coordinate minimizer for the product penalty ``(lam/2)|b(b-1)|``."""
    if xkxk <= 0.0:
        return 0.0
    r = xke / xkxk
    if r <= 0.0:
        return min(0.0, (xke + 0.5 * lam) / (xkxk + lam))
    if r <= 0.5:
        if xkxk > lam:
            return max(0.0, (xke - 0.5 * lam) / (xkxk - lam))
        return 0.0
    if r <= 1.0:
        if xkxk > lam:
            return min(1.0, (xke - 0.5 * lam) / (xkxk - lam))
        return 1.0
    return max(1.0, (xke + 0.5 * lam) / (xkxk + lam))


@njit(cache=True)
def slmin_update(xke, xkxk, lam):
    """Coordinate minimizer for the minimum penalty ``lam*min(|b|, |b-1|)``.

    Requires ``xkxk > 0``; at ``|r| == |r - 1|`` the branch toward 0 wins.
    """
    r = xke / xkxk
    t = lam / xkxk
    if abs(r) <= abs(r - 1.0):
        return soft_threshold(r, t)
    return 1.0 + soft_threshold(r - 1.0, t)


@njit(cache=True)
def _additive_q(b, a, c, l1, l2):
    return 0.5 * a * b * b - c * b + l1 * abs(b) + l2 * abs(b - 1.0)


@njit(cache=True)
def additive_update(xke, xkxk, l1, l2):
    """Coordinate minimizer for ``l1*|b| + l2*|b-1|`` (SigL / ASigL).

    The objective is convex and piecewise quadratic with kinks at 0 and 1, so
    the minimizer is the best of the three stationary points clipped to their
    own pieces.  Ties resolve toward the smaller candidate.
    """
    a, c = xkxk, xke
    if a <= 0.0:
        # linear in b; only bounded when c == 0, which holds for zero columns
        q0 = _additive_q(0.0, a, c, l1, l2)
        q1 = _additive_q(1.0, a, c, l1, l2)
        return 0.0 if q0 <= q1 else 1.0
    b1 = min(0.0, (c + l1 + l2) / a)
    b2 = min(1.0, max(0.0, (c - l1 + l2) / a))
    b3 = max(1.0, (c - l1 - l2) / a)
    best = b1
    qbest = _additive_q(b1, a, c, l1, l2)
    q2 = _additive_q(b2, a, c, l1, l2)
    if q2 < qbest:
        best, qbest = b2, q2
    q3 = _additive_q(b3, a, c, l1, l2)
    if q3 < qbest:
        best = b3
    return best


@njit(cache=True)
def coordinate_update(code, c, a, l1, l2):
    if a <= 0.0:
        if code == CODE_ADDITIVE:
            return additive_update(c, a, l1, l2)
        return 0.0
    if code == CODE_LASSO:
        return soft_threshold(c / a, l1 / a)
    if code == CODE_ADDITIVE:
        return additive_update(c, a, l1, l2)
    if code == CODE_SLPROD:
        return slprod_update(c, a, l1)
    return slmin_update(c, a, l1)


@njit(cache=True, nogil=True)
def sweep(X, norms, beta, resid, code, l1, l2):
    """One cyclic pass k = 0..p-1; updates ``beta`` and ``resid`` in place.

    Returns the largest absolute coefficient change.
    """
    n, p = X.shape
    max_delta = 0.0
    for k in range(p):
        a = norms[k]
        old = beta[k]
        c = 0.0
        if a > 0.0:
            for i in range(n):
                c += X[i, k] * resid[i]
            c += a * old
        new = coordinate_update(code, c, a, l1[k], l2[k])
        d = new - old
        if d != 0.0:
            for i in range(n):
                resid[i] -= d * X[i, k]
            if abs(d) > max_delta:
                max_delta = abs(d)
            beta[k] = new
    return max_delta


@njit(cache=True, nogil=True)
def solve_loop(X, norms, beta, resid, code, l1, l2, max_iter, tol):
    it = 0
    converged = False
    while it < max_iter:
        it += 1
        if sweep(X, norms, beta, resid, code, l1, l2) < tol:
            converged = True
            break
    return it, converged

