"""One-dimensional maximization helpers: grid scan plus golden-section refinement.

Objectives are evaluated in log space by the callers; a value of -inf marks an
infeasible point and is simply never selected.
"""

import numpy as np

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - np.sqrt(5.0)) / 2.0


def golden_max(f, a, b, tol=1e-12, max_iter=200):
    """Golden-section maximization of a scalar function on [a, b].

    Returns (x_best, f_best) over every point actually evaluated, so a
    boundary maximum found by the caller's grid is never lost.
    """
    best_x, best_f = a, f(a)
    fb = f(b)
    if fb > best_f:
        best_x, best_f = b, fb
    dist = b - a
    if dist <= tol:
        return best_x, best_f
    c = a + _INV_PHI2 * dist
    d = a + _INV_PHI * dist
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if fc > best_f:
            best_x, best_f = c, fc
        if fd > best_f:
            best_x, best_f = d, fd
        if dist <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            dist *= _INV_PHI
            c = a + _INV_PHI2 * dist
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            dist *= _INV_PHI
            d = a + _INV_PHI * dist
            fd = f(d)
    return best_x, best_f


def grid_golden_max(f_vec, lo, hi, n=2048, extra=None, refine=True, tol=1e-12):
    """Maximize a vectorized function on [lo, hi].

    Dense grid scan (optionally augmented with caller-supplied `extra`
    abscissae), then golden-section refinement on the cell bracketing the
    best grid point.  Returns (x_best, f_best); f_best is -inf when the
    objective is -inf everywhere.
    """
    if hi < lo:
        return lo, -np.inf
    if hi == lo:
        return lo, float(f_vec(np.array([lo]))[0])
    xs = np.linspace(lo, hi, n)
    if extra is not None:
        extra = np.asarray(extra, dtype=float)
        extra = extra[(extra >= lo) & (extra <= hi)]
        xs = np.unique(np.concatenate([xs, extra]))
    fs = np.asarray(f_vec(xs), dtype=float)
    i = int(np.argmax(fs))
    best_x, best_f = float(xs[i]), float(fs[i])
    if not np.isfinite(best_f) or not refine:
        return best_x, best_f
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, len(xs) - 1)])
    if b > a:
        x, fx = golden_max(
            lambda t: float(f_vec(np.array([t]))[0]), a, b, tol=tol * max(1.0, hi - lo)
        )
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f
