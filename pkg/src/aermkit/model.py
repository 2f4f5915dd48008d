"""Model families, losses, and parameter spaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

BALL_TOL = 1e-9  # absolute slack on the L1 norm for ball membership

FAMILIES = ("bernoulli-mode", "l1-linear", "constant-quantile")
LOSSES = ("zero-one", "squared", "pinball", "absolute")

# family -> (required loss, required parameter-space kind)
_PAIRING = {
    "bernoulli-mode": ("zero-one", "finite"),
    "l1-linear": ("squared", "l1-ball"),
    "constant-quantile": ("pinball", "interval"),
}


@dataclass(frozen=True)
class Loss:
    kind: str
    tau: float | None = None

    def __post_init__(self):
        if self.kind not in LOSSES:
            raise ConfigurationError(f"unknown loss {self.kind!r}")
        if self.kind == "pinball":
            if self.tau is None or not 0.0 < self.tau < 1.0:
                raise ConfigurationError("pinball loss requires 0 < tau < 1")
        elif self.tau is not None:
            raise ConfigurationError(f"loss {self.kind!r} takes no tau")


@dataclass(frozen=True)
class FiniteSpace:
    """A finite list of parameter vectors."""

    points: tuple

    kind = "finite"

    def __post_init__(self):
        pts = tuple(np.asarray(p, dtype=np.float64).ravel() for p in self.points)
        if not pts:
            raise ConfigurationError("finite parameter space must be nonempty")
        d = pts[0].size
        if any(p.size != d for p in pts):
            raise ConfigurationError("finite-space points must share a dimension")
        for p in pts:
            p.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points[0].size

    def contains(self, theta: np.ndarray, tol: float = BALL_TOL) -> bool:
        return any(p.size == theta.size and np.allclose(theta, p, rtol=0.0, atol=tol)
                   for p in self.points)


@dataclass(frozen=True)
class IntervalSpace:
    """A coordinatewise box [lo, hi]."""

    lo: np.ndarray
    hi: np.ndarray

    kind = "interval"

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=np.float64).ravel()
        hi = np.asarray(self.hi, dtype=np.float64).ravel()
        if lo.size != hi.size or lo.size == 0:
            raise ConfigurationError("interval bounds must be nonempty and equal-length")
        if np.any(lo > hi):
            raise ConfigurationError("interval requires lo <= hi coordinatewise")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return self.lo.size

    def contains(self, theta: np.ndarray, tol: float = BALL_TOL) -> bool:
        return bool(np.all(theta >= self.lo - tol) and np.all(theta <= self.hi + tol))


@dataclass(frozen=True)
class L1BallSpace:
    """The ball { beta : ||beta||_1 <= radius } in R^dim."""

    radius: float
    dim: int

    kind = "l1-ball"

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ConfigurationError("l1-ball radius must be positive")
        if self.dim < 1:
            raise ConfigurationError("l1-ball dimension must be >= 1")

    def contains(self, theta: np.ndarray, tol: float = BALL_TOL) -> bool:
        return theta.size == self.dim and float(np.abs(theta).sum()) <= self.radius + tol


ParamSpace = FiniteSpace | IntervalSpace | L1BallSpace


@dataclass(frozen=True)
class ModelSpec:
    """A hypothesis family with its loss and parameter space."""

    family: str
    loss: Loss
    param_space: ParamSpace

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}")
        want_loss, want_space = _PAIRING[self.family]
        if self.loss.kind != want_loss:
            raise ConfigurationError(
                f"family {self.family!r} pairs with {want_loss!r} loss, "
                f"got {self.loss.kind!r}")
        if self.param_space.kind != want_space:
            raise ConfigurationError(
                f"family {self.family!r} uses a {want_space!r} parameter space, "
                f"got {self.param_space.kind!r}")
        if self.family in ("bernoulli-mode", "constant-quantile") \
                and self.param_space.dim != 1:
            raise ConfigurationError(
                f"family {self.family!r} has scalar parameters")

    @property
    def dim(self) -> int:
        return self.param_space.dim

    def check_theta(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=np.float64).ravel()
        if theta.size != self.dim:
            raise DomainError(
                f"parameter has dimension {theta.size}, space expects {self.dim}")
        if not self.param_space.contains(theta):
            raise DomainError("parameter lies outside the parameter space")
        return theta

    def check_sample(self, sample) -> None:
        if self.family == "l1-linear":
            if sample.p != self.dim:
                raise ConfigurationError(
                    f"sample has {sample.p} features, model expects {self.dim}")
        elif sample.p != 0:
            raise ConfigurationError(
                f"family {self.family!r} is featureless (p = 0), "
                f"sample has p = {sample.p}")


def bernoulli_mode_model(values=(0.0, 1.0)) -> ModelSpec:
    """Mode of a discrete label: constant hypotheses under zero-one loss."""
    pts = tuple(np.asarray([v], dtype=np.float64) for v in values)
    return ModelSpec("bernoulli-mode", Loss("zero-one"), FiniteSpace(pts))


def l1_linear_model(radius: float, dim: int) -> ModelSpec:
    """Linear predictors on an L1 ball under squared loss."""
    return ModelSpec("l1-linear", Loss("squared"), L1BallSpace(radius, dim))


def constant_quantile_model(tau: float, lo: float, hi: float) -> ModelSpec:
    """Constant hypotheses on [lo, hi] under pinball loss at level tau."""
    return ModelSpec("constant-quantile", Loss("pinball", tau),
                     IntervalSpace([lo], [hi]))
