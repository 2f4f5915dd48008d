"""Catalog of uniform convergence bounds and their inversions.

A bound here answers: how large must the sample be so that, with
probability at least 1 - alpha, empirical risk tracks true risk uniformly
within eps?  ``required_m`` solves for the sample size, ``coverage_tolerance``
inverts to the tightest eps certified at a given m, and
``validity_tolerance`` is the half-scale inversion used when the
almost-minimizer set must cover the risk minimizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigurationError, ResourceError

_MAX_M = 2 ** 62
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BernoulliExactUcf:
    """Exact binomial bound for the two-point mode model."""

    kind = "bernoulli-exact"


@dataclass(frozen=True)
class ChebyshevUcf:
    """Chebyshev bound; ``variance`` bounds the variance of the per-point loss."""

    variance: float

    kind = "chebyshev-variance"

    def __post_init__(self):
        if self.variance < 0.0:
            raise ConfigurationError("variance bound must be >= 0")


@dataclass(frozen=True)
class SubexponentialUcf:
    """Two-branch subexponential tail bound; ``sigma2`` is the subgaussian sigma^2."""

    sigma2: float

    kind = "subexponential"

    def __post_init__(self):
        if self.sigma2 <= 0.0:
            raise ConfigurationError("sigma2 must be positive")


@dataclass(frozen=True)
class QuantileVarianceUcf:
    """Chebyshev-type bound for quantile estimation under pinball loss.

    ``v_sup`` bounds, over the parameter interval, the variance of
    ``tau*Y - (Y - theta) * 1{Y < theta}``.
    """

    tau: float
    v_sup: float

    kind = "quantile-variance"

    def __post_init__(self):
        if not 0.0 < self.tau < 1.0:
            raise ConfigurationError("tau must lie in (0, 1)")
        if self.v_sup < 0.0:
            raise ConfigurationError("v_sup must be >= 0")


@dataclass(frozen=True)
class LassoExponentialUcf:
    """Exponential bound for L1-constrained least squares; ``c`` is the scale."""

    c: float

    kind = "lasso-exponential"

    def __post_init__(self):
        if self.c <= 0.0:
            raise ConfigurationError("scale c must be positive")


@dataclass(frozen=True)
class RademacherUcf:
    """Rademacher-complexity bound with the closed-form complexity
    ``2*M*lam/m * sqrt(sq_norm_sum)``.
    """

    M: float
    lam: float
    sq_norm_sum: float

    kind = "rademacher"

    def __post_init__(self):
        if self.M <= 0.0 or self.lam <= 0.0:
            raise ConfigurationError("M and lam must be positive")
        if self.sq_norm_sum < 0.0:
            raise ConfigurationError("sq_norm_sum must be >= 0")


UcfSpec = (BernoulliExactUcf | ChebyshevUcf | SubexponentialUcf
           | QuantileVarianceUcf | LassoExponentialUcf | RademacherUcf)

UCF_KINDS = ("bernoulli-exact", "chebyshev-variance", "subexponential",
             "quantile-variance", "lasso-exponential", "rademacher")


def _check_eps_alpha(eps: float, alpha: float) -> None:
    if eps <= 0.0:
        raise ConfigurationError("eps must be positive")
    if not 0.0 < alpha < 1.0:
        raise ConfigurationError("alpha must lie in (0, 1)")


def _check_m_alpha(m: int, alpha: float) -> None:
    if m < 1:
        raise ConfigurationError("m must be >= 1")
    if not 0.0 < alpha < 1.0:
        raise ConfigurationError("alpha must lie in (0, 1)")


def _ceil_m(raw: float) -> int:
    if not np.isfinite(raw) or raw > _MAX_M:
        raise ResourceError(
            f"required sample size {raw!r} exceeds what can be represented",
            requirement=raw)
    return max(1, int(math.ceil(raw)))


def _div(num: float, den: float) -> float:
    # eps**2 can underflow to 0; report the unbounded requirement instead
    if den == 0.0:
        raise ResourceError("required sample size is unbounded at this eps",
                            requirement=math.inf)
    return num / den


# ---------------------------------------------------------------------------
# exact binomial coverage for the mode model


def bernoulli_coverage_at(m: int, eps: float, p) -> np.ndarray:
    """P[|mean of m Bernoulli(p) draws - p| <= eps], exactly."""
    if m < 1:
        raise ConfigurationError("m must be >= 1")
    if eps <= 0.0:
        raise ConfigurationError("eps must be positive")
    p_arr = np.atleast_1d(np.asarray(p, dtype=np.float64))
    if np.any((p_arr < 0.0) | (p_arr > 1.0)):
        raise ConfigurationError("p must lie in [0, 1]")
    return kernels.binom_window_coverage(int(m), float(eps), p_arr)


def bernoulli_exact_worst_coverage(m: int, eps: float) -> float:
    """Infimum over p of the exact binomial coverage probability.

    Evaluates a 2001-point uniform grid plus every discontinuity point
    i/m +- eps (with one-sided offsets, since the infimum is approached as p
    crosses a window boundary), then refines the best bracket by
    golden-section search.
    """
    if m < 1:
        raise ConfigurationError("m must be >= 1")
    if eps <= 0.0:
        raise ConfigurationError("eps must be positive")
    if eps >= 1.0:
        return 1.0
    i = np.arange(m + 1, dtype=np.float64)
    disc = np.concatenate([i / m - eps, i / m + eps])
    h = min(1e-10, 0.1 / m)
    pts = np.concatenate([np.linspace(0.0, 1.0, 2001),
                          disc, disc - h, disc + h])
    grid = np.unique(np.clip(pts, 0.0, 1.0))
    cov = kernels.binom_window_coverage(m, eps, grid)
    j = int(np.argmin(cov))
    best = float(cov[j])
    a = grid[j - 1] if j > 0 else grid[j]
    b = grid[j + 1] if j + 1 < grid.size else grid[j]
    refined = _golden_min(
        lambda p: float(kernels.binom_window_coverage(m, eps, np.array([p]))[0]),
        float(a), float(b))
    return min(best, refined)


def _golden_min(fn, a: float, b: float, iters: int = 36) -> float:
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iters):
        if b - a < 1e-15:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fn(x2)
    return min(f1, f2)


# ---------------------------------------------------------------------------
# sample-size requirement


def required_m(ucf: UcfSpec, eps: float, alpha: float) -> int:
    """Smallest m for which the bound certifies uniform closeness eps at level alpha."""
    _check_eps_alpha(eps, alpha)
    if isinstance(ucf, ChebyshevUcf):
        return _ceil_m(_div(ucf.variance, alpha * eps * eps))
    if isinstance(ucf, QuantileVarianceUcf):
        return _ceil_m(_div(ucf.v_sup, alpha * eps * eps))
    if isinstance(ucf, SubexponentialUcf):
        s2 = ucf.sigma2
        raw = max(_div(64.0 * s2 * s2, eps * eps), _div(8.0 * s2, eps)) \
            * math.log(2.0 / alpha)
        return _ceil_m(raw)
    if isinstance(ucf, LassoExponentialUcf):
        return _ceil_m(_div(8.0 * ucf.c * ucf.c * math.log(2.0 / alpha), eps))
    if isinstance(ucf, RademacherUcf):
        return _search_min_m(lambda m: coverage_tolerance(ucf, m, alpha) <= eps)
    if isinstance(ucf, BernoulliExactUcf):
        if eps >= 1.0:
            return 1
        target = 1.0 - alpha
        m = _search_min_m(
            lambda m: bernoulli_exact_worst_coverage(m, eps) >= target,
            cap=2 ** 31)
        # the coverage is not exactly monotone in m; settle on a crossing
        while m > 1 and bernoulli_exact_worst_coverage(m - 1, eps) >= target:
            m -= 1
        while bernoulli_exact_worst_coverage(m, eps) < target:
            m += 1
        return m
    raise ConfigurationError(f"unknown bound {ucf!r}")


def _search_min_m(pred, cap: int = _MAX_M) -> int:
    hi = 1
    while not pred(hi):
        hi *= 2
        if hi > cap:
            raise ResourceError(
                f"no sample size up to {cap} satisfies the bound", requirement=hi)
    lo = hi // 2  # pred(lo) unknown/False, pred(hi) True
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# tolerance inversions


def coverage_tolerance(ucf: UcfSpec, m: int, alpha: float) -> float:
    """Tightest eps the bound certifies at sample size m and level alpha."""
    _check_m_alpha(m, alpha)
    if isinstance(ucf, ChebyshevUcf):
        return math.sqrt(ucf.variance / (alpha * m))
    if isinstance(ucf, QuantileVarianceUcf):
        return math.sqrt(ucf.v_sup / (alpha * m))
    if isinstance(ucf, SubexponentialUcf):
        big_l = math.log(2.0 / alpha)
        if m >= big_l:
            return 8.0 * ucf.sigma2 * math.sqrt(big_l / m)
        return 8.0 * ucf.sigma2 * big_l / m
    if isinstance(ucf, LassoExponentialUcf):
        return 8.0 * ucf.c * ucf.c * math.log(2.0 / alpha) / m
    if isinstance(ucf, RademacherUcf):
        complexity = 2.0 * ucf.M * ucf.lam / m * math.sqrt(ucf.sq_norm_sum)
        return 4.0 * complexity + 6.0 * math.sqrt(math.log(4.0 / alpha) / (2.0 * m))
    if isinstance(ucf, BernoulliExactUcf):
        target = 1.0 - alpha
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if bernoulli_exact_worst_coverage(m, mid) >= target:
                hi = mid
            else:
                lo = mid
        return hi
    raise ConfigurationError(f"unknown bound {ucf!r}")


def validity_tolerance(ucf: UcfSpec, m: int, alpha: float) -> float:
    """inf{eps : m >= required_m(eps/2, alpha)} - the coverage guarantee scale.

    For bounds whose requirement inverts in closed form this is exactly
    twice :func:`coverage_tolerance`; the two-branch subexponential bound is
    inverted by bisection instead.
    """
    _check_m_alpha(m, alpha)
    if isinstance(ucf, SubexponentialUcf):
        def feasible(eps: float) -> bool:
            try:
                return required_m(ucf, eps / 2.0, alpha) <= m
            except ResourceError:
                return False

        hi = 1.0
        while not feasible(hi):
            hi *= 2.0
            if hi > 1e18:
                raise ResourceError("validity tolerance overflows", requirement=hi)
        lo = 0.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if feasible(mid):
                hi = mid
            else:
                lo = mid
        return hi
    return 2.0 * coverage_tolerance(ucf, m, alpha)
