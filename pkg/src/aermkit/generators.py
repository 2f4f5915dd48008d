"""Synthetic data generators with known risk minimizers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtri

from .errors import ConfigurationError
from .model import ModelSpec
from .sample import LabeledSample


@dataclass(frozen=True)
class UniformLaw:
    a: float
    b: float

    name = "uniform"

    def __post_init__(self):
        if not self.a < self.b:
            raise ConfigurationError("uniform law requires a < b")

    def draw(self, m: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.a, self.b, m)

    def quantile(self, tau: float) -> float:
        return self.a + tau * (self.b - self.a)

    def pdf(self, y: np.ndarray) -> np.ndarray:
        return np.where((y >= self.a) & (y <= self.b), 1.0 / (self.b - self.a), 0.0)

    @property
    def support(self) -> tuple[float, float]:
        return self.a, self.b


@dataclass(frozen=True)
class PointMassLaw:
    value: float

    name = "point-mass"

    def draw(self, m: int, rng: np.random.Generator) -> np.ndarray:
        return np.full(m, self.value)

    def quantile(self, tau: float) -> float:
        return self.value

    @property
    def support(self) -> tuple[float, float]:
        return self.value, self.value


@dataclass(frozen=True)
class NormalLaw:
    mu: float
    sigma: float

    name = "normal"

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ConfigurationError("normal law requires sigma > 0")

    def draw(self, m: int, rng: np.random.Generator) -> np.ndarray:
        return rng.normal(self.mu, self.sigma, m)

    def quantile(self, tau: float) -> float:
        return self.mu + self.sigma * float(ndtri(tau))

    def pdf(self, y: np.ndarray) -> np.ndarray:
        z = (y - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (self.sigma * np.sqrt(2.0 * np.pi))

    @property
    def support(self) -> tuple[float, float]:
        return self.mu - 8.0 * self.sigma, self.mu + 8.0 * self.sigma


Law = UniformLaw | PointMassLaw | NormalLaw


@dataclass(frozen=True)
class BernoulliGenerator:
    """Labels from Bernoulli(p); no examples."""

    p: float
    m: int

    kind = "bernoulli"

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigurationError("p must lie in [0, 1]")
        if self.m < 1:
            raise ConfigurationError("m must be >= 1")

    def draw(self, rng: np.random.Generator) -> LabeledSample:
        return LabeledSample.from_labels(rng.binomial(1, self.p, self.m).astype(np.float64))


@dataclass(frozen=True)
class LassoLinearGenerator:
    """X ~ Unif(-1,1)^p, noise U ~ Unif(-1,1), Y = X'beta0 + U."""

    beta0: np.ndarray
    m: int

    kind = "lasso-linear"

    def __post_init__(self):
        b = np.asarray(self.beta0, dtype=np.float64).ravel()
        if b.size < 1 or not np.all(np.isfinite(b)):
            raise ConfigurationError("beta0 must be a finite nonempty vector")
        if self.m < 1:
            raise ConfigurationError("m must be >= 1")
        b.setflags(write=False)
        object.__setattr__(self, "beta0", b)

    @property
    def p_dim(self) -> int:
        return self.beta0.size

    def draw(self, rng: np.random.Generator) -> LabeledSample:
        X = rng.uniform(-1.0, 1.0, (self.m, self.p_dim))
        y = X @ self.beta0 + rng.uniform(-1.0, 1.0, self.m)
        return LabeledSample(X, y)


@dataclass(frozen=True)
class LabeledDistributionGenerator:
    """Labels from a named one-dimensional law; no examples."""

    law: Law
    m: int

    kind = "labeled-distribution"

    def __post_init__(self):
        if self.m < 1:
            raise ConfigurationError("m must be >= 1")

    def draw(self, rng: np.random.Generator) -> LabeledSample:
        return LabeledSample.from_labels(self.law.draw(self.m, rng))


GeneratorSpec = BernoulliGenerator | LassoLinearGenerator | LabeledDistributionGenerator


def true_risk_minimizer(gen: GeneratorSpec, model: ModelSpec):
    """The population risk minimizer of the model under this generator.

    Returns a single parameter vector, or a list of vectors when the
    minimizer is not unique (Bernoulli p = 1/2).
    """
    if isinstance(gen, BernoulliGenerator) and model.family == "bernoulli-mode":
        if gen.p < 0.5:
            return np.array([0.0])
        if gen.p > 0.5:
            return np.array([1.0])
        return [np.array([0.0]), np.array([1.0])]
    if isinstance(gen, LassoLinearGenerator) and model.family == "l1-linear":
        if gen.p_dim != model.dim:
            raise ConfigurationError("generator and model dimensions disagree")
        radius = model.param_space.radius
        if float(np.abs(gen.beta0).sum()) <= radius:
            return gen.beta0.copy()
        # isotropic X makes the constrained minimizer the L1 projection
        from .risk import project_l1_ball
        return project_l1_ball(gen.beta0, radius)
    if isinstance(gen, LabeledDistributionGenerator) \
            and model.family == "constant-quantile":
        q = gen.law.quantile(model.loss.tau)
        lo, hi = float(model.param_space.lo[0]), float(model.param_space.hi[0])
        return np.array([min(max(q, lo), hi)])
    raise ConfigurationError(
        f"generator {gen.kind!r} is incompatible with family {model.family!r}")


def pinball_score_variance(law: Law, theta: float, tau: float) -> float:
    """var[tau*Y - (Y - theta) * 1{Y < theta}] under the law, by quadrature."""
    if isinstance(law, PointMassLaw):
        return 0.0
    lo, hi = law.support

    def g(y):
        return tau * y - (y - theta) * (y < theta)

    mean, _ = quad(lambda y: g(y) * law.pdf(np.asarray(y)), lo, hi,
                   points=[theta] if lo < theta < hi else None, limit=200)
    second, _ = quad(lambda y: g(y) ** 2 * law.pdf(np.asarray(y)), lo, hi,
                     points=[theta] if lo < theta < hi else None, limit=200)
    return max(float(second - mean * mean), 0.0)


def quantile_v_sup(law: Law, tau: float, lo: float, hi: float,
                   grid_size: int = 201) -> float:
    """sup over theta in [lo, hi] of the pinball score variance."""
    grid = np.linspace(lo, hi, grid_size)
    return max(pinball_score_variance(law, float(t), tau) for t in grid)
