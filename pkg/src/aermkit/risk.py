"""Empirical risk, constrained minimization, and region extrema.

Each model family gets an engine that evaluates empirical risk summaries
from per-sample weights, so the full-sample operations and the bootstrap
(which reweights the same sample) share one code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import (ConfigurationError, ConvergenceError, EmptyRegionError,
                     UnsupportedOperationError)
from .model import FiniteSpace, IntervalSpace, L1BallSpace, ModelSpec
from .regions import (ComplementRegion, FiniteRegion, L1BallRegion,
                      ParamRegion, UnionRegion, intervals_1d, region_contains)
from .sample import LabeledSample

TOL_OPT = 1e-9      # optimizer tolerance; also the slack on set-membership tests
PGD_MAX_ITER = 10_000


class ErmResult(NamedTuple):
    theta: np.ndarray
    min_risk: float


def project_l1_ball(v, radius: float) -> np.ndarray:
    """Euclidean projection onto { beta : ||beta||_1 <= radius }."""
    if radius <= 0.0:
        raise ConfigurationError("projection radius must be positive")
    return kernels.l1_project(np.asarray(v, dtype=np.float64).ravel(), float(radius))


def empirical_risk(model: ModelSpec, sample: LabeledSample, theta) -> float:
    """Average loss of the constant/linear hypothesis ``theta`` on the sample."""
    model.check_sample(sample)
    theta = model.check_theta(theta)
    y = sample.labels
    if model.family == "bernoulli-mode":
        return float(np.mean(y != theta[0]))
    if model.family == "constant-quantile":
        risk = kernels.pinball_risk(y, np.ones_like(y), np.asarray([theta[0]]),
                                    model.loss.tau, float(y.size))
        return float(risk[0])
    resid = y - sample.examples @ theta
    return float(resid @ resid / y.size)


def erm_solve(model: ModelSpec, sample: LabeledSample) -> ErmResult:
    """Minimize the empirical risk over the whole parameter space."""
    engine = make_engine(model, sample)
    theta, risk = engine.minimize(engine.base_stats())
    return ErmResult(theta, risk)


def region_min_empirical_risk(model: ModelSpec, sample: LabeledSample,
                              region: ParamRegion) -> float:
    """Minimum empirical risk over (region intersected with the space)."""
    engine = make_engine(model, sample)
    prep = engine.prepare_region(region)
    return engine.region_min(prep, engine.base_stats())


def region_max_empirical_risk(model: ModelSpec, sample: LabeledSample,
                              region: ParamRegion) -> float:
    """Maximum empirical risk over (region intersected with the space)."""
    engine = make_engine(model, sample)
    prep = engine.prepare_region(region)
    return engine.region_max(prep, engine.base_stats())


def make_engine(model: ModelSpec, sample: LabeledSample):
    model.check_sample(sample)
    if model.family == "bernoulli-mode":
        return _ModeEngine(model, sample)
    if model.family == "constant-quantile":
        return _QuantileEngine(model, sample)
    return _L1LinearEngine(model, sample)


# ---------------------------------------------------------------------------
# bernoulli-mode: finite space, zero-one loss; sufficient statistic is the
# count of each distinct label value.


class _ModeEngine:
    def __init__(self, model: ModelSpec, sample: LabeledSample):
        self.model = model
        self.m = sample.m
        space: FiniteSpace = model.param_space
        self.values, self.counts = np.unique(sample.labels, return_counts=True)
        self.point_values = np.array([p[0] for p in space.points])
        # index of each space point among the distinct labels, -1 if absent
        idx = np.searchsorted(self.values, self.point_values)
        idx = np.clip(idx, 0, self.values.size - 1)
        hit = self.values[idx] == self.point_values
        self.value_index = np.where(hit, idx, -1)
        self.points = space.points

    def base_stats(self) -> np.ndarray:
        return self.counts

    def resample_stats_batch(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.values.size == 1:
            return np.full((n, 1), self.m, dtype=np.int64)
        return rng.multinomial(self.m, self.counts / self.m, size=n)

    def _risks(self, counts: np.ndarray) -> np.ndarray:
        freq = np.where(self.value_index >= 0,
                        counts[self.value_index], 0) / self.m
        return 1.0 - freq

    def minimize(self, counts) -> tuple[np.ndarray, float]:
        risks = self._risks(counts)
        best = int(np.argmin(risks))  # ties break toward the first point listed
        return self.points[best], float(risks[best])

    def min_risk(self, counts) -> float:
        return float(self._risks(counts).min())

    def prepare_region(self, region: ParamRegion) -> np.ndarray:
        mask = np.array([region_contains(region, p) for p in self.points])
        if not mask.any():
            raise EmptyRegionError("region does not meet the parameter space")
        return mask

    def region_min(self, mask, counts) -> float:
        return float(self._risks(counts)[mask].min())

    def region_max(self, mask, counts) -> float:
        return float(self._risks(counts)[mask].max())


# ---------------------------------------------------------------------------
# constant-quantile: 1-D interval space, pinball loss.  The empirical risk is
# piecewise-linear and convex in theta, so restricted minima sit at the
# clipped sample quantile and restricted maxima at interval endpoints.


class _QuantileEngine:
    def __init__(self, model: ModelSpec, sample: LabeledSample):
        self.model = model
        self.m = sample.m
        self.tau = model.loss.tau
        space: IntervalSpace = model.param_space
        self.lo, self.hi = float(space.lo[0]), float(space.hi[0])
        self.y_sorted = np.sort(sample.labels)

    def base_stats(self) -> np.ndarray:
        return np.ones(self.m)

    def resample_stats_batch(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.multinomial(self.m, np.full(self.m, 1.0 / self.m), size=n).astype(np.float64)

    def _lower_quantile(self, w: np.ndarray) -> float:
        cum = np.cumsum(w)
        target = self.tau * cum[-1]
        i = int(np.searchsorted(cum, target, side="left"))
        return float(self.y_sorted[min(i, self.m - 1)])

    def _risk_at(self, thetas, w) -> np.ndarray:
        return kernels.pinball_risk(self.y_sorted, w, np.asarray(thetas, dtype=np.float64),
                                    self.tau, float(self.m))

    def minimize(self, w) -> tuple[np.ndarray, float]:
        theta = min(max(self._lower_quantile(w), self.lo), self.hi)
        return np.array([theta]), float(self._risk_at([theta], w)[0])

    def min_risk(self, w) -> float:
        return self.minimize(w)[1]

    def prepare_region(self, region: ParamRegion) -> list[tuple[float, float]]:
        intervals = intervals_1d(region, self.lo, self.hi)
        if not intervals:
            raise EmptyRegionError("region does not meet the parameter space")
        return intervals

    def region_min(self, intervals, w) -> float:
        q = self._lower_quantile(w)
        cands = [min(max(q, a), b) for a, b in intervals]
        return float(self._risk_at(cands, w).min())

    def region_max(self, intervals, w) -> float:
        cands = [v for ab in intervals for v in ab]
        return float(self._risk_at(cands, w).max())


# ---------------------------------------------------------------------------
# l1-linear: squared loss over an L1 ball.  All risk queries reduce to the
# quadratic  q(beta) = beta'A beta - 2 b'beta + c0  with (A, b, c0) the
# (weighted) second moments of the sample.


@dataclass(frozen=True)
class _Quadratic:
    A: np.ndarray
    b: np.ndarray
    c0: float
    step: float  # 1 / Lipschitz constant of the gradient


class _L1LinearEngine:
    def __init__(self, model: ModelSpec, sample: LabeledSample):
        self.model = model
        self.sample = sample
        self.m = sample.m
        space: L1BallSpace = model.param_space
        self.radius = float(space.radius)
        self.dim = space.dim

    def base_stats(self) -> _Quadratic:
        return self._quadratic(None)

    def resample_stats_batch(self, n: int, rng: np.random.Generator) -> list["_Quadratic"]:
        weights = rng.multinomial(self.m, np.full(self.m, 1.0 / self.m), size=n)
        return [self._quadratic(w.astype(np.float64)) for w in weights]

    def _quadratic(self, w: np.ndarray | None) -> _Quadratic:
        X, y = self.sample.examples, self.sample.labels
        if w is None:
            A = X.T @ X / self.m
            b = X.T @ y / self.m
            c0 = float(y @ y / self.m)
        else:
            Xw = X * w[:, None]
            A = Xw.T @ X / self.m
            b = Xw.T @ y / self.m
            c0 = float((w * y) @ y / self.m)
        A = np.ascontiguousarray(0.5 * (A + A.T))
        lip = 2.0 * float(np.linalg.eigvalsh(A)[-1]) if A.size else 0.0
        step = 1.0 / lip if lip > 0.0 else 1.0
        return _Quadratic(A, np.ascontiguousarray(b), c0, step)

    def _constrained_min(self, q: _Quadratic, radius: float) -> tuple[np.ndarray, float]:
        if radius <= 0.0:
            return np.zeros(self.dim), q.c0
        # interior shortcut: the unconstrained minimizer, when feasible, is exact
        x_free, *_ = np.linalg.lstsq(q.A, q.b, rcond=None)
        if float(np.abs(x_free).sum()) <= radius + 1e-12:
            val = float(x_free @ q.A @ x_free - 2.0 * (q.b @ x_free) + q.c0)
            return x_free, max(val, 0.0)
        x0 = kernels.l1_project(x_free, radius)
        x, val, _, converged = kernels.l1_quadratic_min(
            q.A, q.b, q.c0, radius, x0, q.step, PGD_MAX_ITER, TOL_OPT)
        if not converged:
            raise ConvergenceError(
                f"projected gradient did not converge in {PGD_MAX_ITER} iterations",
                best_point=x, best_value=val)
        return x, max(float(val), 0.0)

    def minimize(self, q: _Quadratic) -> tuple[np.ndarray, float]:
        return self._constrained_min(q, self.radius)

    def min_risk(self, q: _Quadratic) -> float:
        return self.minimize(q)[1]

    def prepare_region(self, region: ParamRegion):
        if isinstance(region, L1BallRegion):
            return ("ball", min(region.radius, self.radius))
        if isinstance(region, FiniteRegion):
            pts = [p for p in region.points
                   if p.size == self.dim and self.model.param_space.contains(p)]
            if not pts:
                raise EmptyRegionError("region does not meet the parameter space")
            return ("points", pts)
        if isinstance(region, UnionRegion):
            preps = []
            for member in region.members:
                try:
                    preps.append(self.prepare_region(member))
                except EmptyRegionError:
                    continue
            if not preps:
                raise EmptyRegionError("region does not meet the parameter space")
            return ("union", preps)
        if isinstance(region, ComplementRegion):
            raise UnsupportedOperationError(
                "complement regions are not supported for l1-linear models")
        raise UnsupportedOperationError(
            f"{region.kind} regions are not supported for l1-linear models")

    def _point_risks(self, pts, q: _Quadratic) -> np.ndarray:
        return np.array([float(p @ q.A @ p - 2.0 * (q.b @ p) + q.c0) for p in pts])

    def region_min(self, prep, q: _Quadratic) -> float:
        tag, payload = prep
        if tag == "ball":
            return self._constrained_min(q, payload)[1]
        if tag == "points":
            return float(np.maximum(self._point_risks(payload, q), 0.0).min())
        return min(self.region_min(p, q) for p in payload)

    def region_max(self, prep, q: _Quadratic) -> float:
        tag, payload = prep
        if tag == "ball":
            r = payload
            if r <= 0.0:
                return q.c0
            # convex objective on a polytope: the max sits at a vertex +-r e_j
            diag = np.diag(q.A)
            return float((r * r * diag + 2.0 * r * np.abs(q.b) + q.c0).max())
        if tag == "points":
            return float(self._point_risks(payload, q).max())
        return max(self.region_max(p, q) for p in payload)
