# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend; see ``_ref.py`` for the reference semantics."""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, fabs, floor

cimport scipy.special.cython_special as cs

cnp.import_array()


def l1_project(const double[::1] v, double radius):
    """Euclidean projection of ``v`` onto the L1 ball of the given radius."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i
    cdef double total = 0.0, css, next_u, theta, shrunk
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    if radius <= 0.0:
        for i in range(n):
            out[i] = 0.0
        return out_arr
    for i in range(n):
        total += fabs(v[i])
    if total <= radius:
        for i in range(n):
            out[i] = v[i]
        return out_arr
    a_arr = np.abs(np.asarray(v))
    a_arr.sort()
    cdef double[::1] u = a_arr  # ascending order
    css = 0.0
    theta = (total - radius) / n
    for i in range(n):
        next_u = u[n - 1 - i]
        css += next_u
        if next_u * (i + 1) <= css - radius:
            # the active-support condition first fails at 1-based rank i+1
            css -= next_u
            theta = (css - radius) / i
            break
    for i in range(n):
        shrunk = fabs(v[i]) - theta
        if shrunk < 0.0:
            shrunk = 0.0
        out[i] = shrunk if v[i] >= 0.0 else -shrunk
    return out_arr


cdef double _quad_value(const double[:, ::1] A, const double[::1] b, double c0,
                        const double[::1] x) nogil:
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc = c0, row
    for i in range(n):
        row = 0.0
        for j in range(n):
            row += A[i, j] * x[j]
        acc += x[i] * row - 2.0 * b[i] * x[i]
    return acc


def l1_quadratic_min(const double[:, ::1] A, const double[::1] b, double c0,
                     double radius, const double[::1] x0, double step,
                     int max_iter, double tol):
    """Projected gradient descent for ``x'Ax - 2b'x + c0`` over the L1 ball."""
    cdef Py_ssize_t n = b.shape[0]
    cdef Py_ssize_t i, j
    cdef int it
    cdef double f, f_new, decrease, g
    x_arr = l1_project(x0, radius)
    cdef const double[::1] x = x_arr
    trial_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] trial = trial_arr
    cdef const double[::1] x_new
    f = _quad_value(A, b, c0, x)
    for it in range(1, max_iter + 1):
        for i in range(n):
            g = 0.0
            for j in range(n):
                g += A[i, j] * x[j]
            g = 2.0 * (g - b[i])
            trial[i] = x[i] - step * g
        proj_arr = l1_project(trial, radius)
        x_new = proj_arr
        f_new = _quad_value(A, b, c0, x_new)
        decrease = f - f_new
        if f_new <= f:
            x_arr = proj_arr
            x = x_new
            f = f_new
        if fabs(decrease) <= tol:
            return x_arr, f, it, True
    return x_arr, f, max_iter, False


def pinball_risk(const double[::1] y, const double[::1] w,
                 const double[::1] thetas, double tau, double wsum):
    """Weighted average pinball loss at each candidate location."""
    cdef Py_ssize_t m = y.shape[0]
    cdef Py_ssize_t k = thetas.shape[0]
    cdef Py_ssize_t i, j
    cdef double theta, acc, diff
    out_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for j in range(k):
            theta = thetas[j]
            acc = 0.0
            for i in range(m):
                diff = y[i] - theta
                if diff < 0.0:
                    acc += w[i] * diff * (tau - 1.0)
                else:
                    acc += w[i] * diff * tau
            out[j] = acc / wsum
    return out_arr


def binom_window_coverage(long m, double eps, const double[::1] p):
    """P[|Binomial(m, p)/m - p| <= eps] via the exact binomial CDF."""
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t i
    cdef double lo, hi, pi, cov, md = <double> m
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(n):
        pi = p[i]
        lo = ceil(md * (pi - eps))
        if lo < 0.0:
            lo = 0.0
        hi = floor(md * (pi + eps))
        if hi > md:
            hi = md
        if lo > hi:
            out[i] = 0.0
            continue
        cov = cs.bdtr(hi, m, pi)
        if lo >= 1.0:
            cov -= cs.bdtr(lo - 1.0, m, pi)
        if cov < 0.0:
            cov = 0.0
        elif cov > 1.0:
            cov = 1.0
        out[i] = cov
    return out_arr
