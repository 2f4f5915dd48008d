"""Pure-NumPy kernel implementations (fallback backend).

Function signatures mirror the compiled backend in ``_core.pyx`` exactly;
``aermkit.kernels`` picks whichever is available at import time.
"""

from __future__ import annotations

import numpy as np
from scipy.special import bdtr


def l1_project(v: np.ndarray, radius: float) -> np.ndarray:
    """Euclidean projection of ``v`` onto the L1 ball of the given radius.

    Sort-based algorithm (Duchi et al.): soft-threshold at the level that
    puts the result exactly on the ball boundary.
    """
    v = np.asarray(v, dtype=np.float64)
    if radius <= 0.0:
        return np.zeros_like(v)
    a = np.abs(v)
    if a.sum() <= radius:
        return v.copy()
    u = np.sort(a)[::-1]
    css = np.cumsum(u)
    k = np.arange(1, v.size + 1)
    rho = np.nonzero(u * k > css - radius)[0][-1]
    theta = (css[rho] - radius) / (rho + 1.0)
    return np.sign(v) * np.maximum(a - theta, 0.0)


def l1_quadratic_min(A: np.ndarray, b: np.ndarray, c0: float, radius: float,
                     x0: np.ndarray, step: float, max_iter: int,
                     tol: float) -> tuple[np.ndarray, float, int, bool]:
    """Projected gradient descent for ``x'Ax - 2b'x + c0`` over the L1 ball.

    Fixed step (the caller supplies 1/Lipschitz), stopping when the
    objective decrease falls to ``tol``.  Returns
    ``(x, value, iterations, converged)``.
    """
    x = l1_project(np.asarray(x0, dtype=np.float64), radius)
    f = float(x @ A @ x - 2.0 * (b @ x) + c0)
    for it in range(1, max_iter + 1):
        g = 2.0 * (A @ x - b)
        x_new = l1_project(x - step * g, radius)
        f_new = float(x_new @ A @ x_new - 2.0 * (b @ x_new) + c0)
        decrease = f - f_new
        if f_new <= f:
            x, f = x_new, f_new
        if abs(decrease) <= tol:
            return x, f, it, True
    return x, f, max_iter, False


def pinball_risk(y: np.ndarray, w: np.ndarray, thetas: np.ndarray,
                 tau: float, wsum: float) -> np.ndarray:
    """Weighted average pinball loss at each candidate location.

    Loss per point: ``(y - theta) * (tau - 1{y < theta})``.
    """
    y = np.asarray(y, dtype=np.float64)[:, None]
    w = np.asarray(w, dtype=np.float64)[:, None]
    t = np.asarray(thetas, dtype=np.float64)[None, :]
    diff = y - t
    loss = diff * (tau - (diff < 0.0))
    return (w * loss).sum(axis=0) / wsum


def binom_window_coverage(m: int, eps: float, p: np.ndarray) -> np.ndarray:
    """P[|Binomial(m, p)/m - p| <= eps] via the exact binomial CDF.

    The window is the integer range [ceil(m(p-eps)), floor(m(p+eps))]
    intersected with [0, m]; an empty window has coverage 0.
    """
    p = np.asarray(p, dtype=np.float64)
    lo = np.maximum(np.ceil(m * (p - eps)), 0.0)
    hi = np.minimum(np.floor(m * (p + eps)), float(m))
    out = np.zeros_like(p)
    ok = lo <= hi
    if np.any(ok):
        n = int(m)
        upper = bdtr(hi[ok], n, p[ok])
        lower = np.where(lo[ok] >= 1.0, bdtr(np.maximum(lo[ok] - 1.0, 0.0), n, p[ok]), 0.0)
        out[ok] = np.clip(upper - lower, 0.0, 1.0)
    return out
