"""Bootstrap and Monte-Carlo plausibility, replicate bounds, and the two
hypothesis-test modes.

Bootstrapped plausibility of a region A at tolerance eps: the fraction of
size-m with-replacement resamples of the observed sample whose
almost-minimizer set meets A.  Belief is the dual (resamples whose set is
contained in A).  Resamples are reduced to per-family sufficient statistics
(value counts, multinomial weights, weighted second moments), drawn in
replicate order from a single counter-based stream so estimates are a pure
function of (inputs, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConfigurationError, EmptyRegionError,
                     UndefinedPlausibilityError)
from .model import ModelSpec
from .regions import ComplementRegion, ParamRegion
from .risk import TOL_OPT, make_engine
from .rngstreams import derive_seed, indexed_map, stream_rng
from .sample import LabeledSample
from .ucf import UcfSpec, validity_tolerance

ALPHA_BISECT_TOL = 1e-4


@dataclass(frozen=True)
class PlausibilityEstimate:
    """An estimated plausibility with its tolerance and provenance."""

    value: float
    eps: float
    replicates: int
    skipped_empty: int
    method: str            # "bootstrap" or "monte-carlo"
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("plausibility must lie in [0, 1]")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not 0 <= self.skipped_empty < self.replicates:
            raise ValueError("skipped_empty out of range")

    @property
    def mc_error(self) -> float:
        n = self.replicates - self.skipped_empty
        return math.sqrt(self.value * (1.0 - self.value) / n) if n else float("nan")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "eps": self.eps,
            "replicates": self.replicates,
            "skipped_empty": self.skipped_empty,
            "method": self.method,
            "seed": self.seed,
        }


class ResampleSet:
    """B bootstrap resamples of a sample, queryable at any region/tolerance.

    Drawing once and reusing across queries keeps comparisons across eps or
    across regions free of resampling noise.
    """

    def __init__(self, model: ModelSpec, sample: LabeledSample, B: int, seed: int):
        if B < 1:
            raise ConfigurationError("B must be >= 1")
        self.model = model
        self.sample = sample
        self.B = int(B)
        self.seed = int(seed)
        self.engine = make_engine(model, sample)
        rng = stream_rng(derive_seed(self.seed, "bootstrap-resamples"), 0)
        self._stats = self.engine.resample_stats_batch(self.B, rng)
        self._min_risks = np.array(
            [self.engine.min_risk(self._stats[i]) for i in range(self.B)])
        self._region_cache: dict[int, tuple[object, np.ndarray]] = {}

    def prepare(self, region: ParamRegion):
        return self.engine.prepare_region(region)

    def _region_mins(self, prep) -> np.ndarray:
        key = id(prep)
        hit = self._region_cache.get(key)
        if hit is not None and hit[0] is prep:
            return hit[1]
        lows = np.array(
            [self.engine.region_min(prep, self._stats[i]) for i in range(self.B)])
        self._region_cache[key] = (prep, lows)
        return lows

    def intersect_indicators(self, prep, eps: float) -> np.ndarray:
        lows = self._region_mins(prep)
        return (lows <= self._min_risks + eps + TOL_OPT).astype(np.uint8)

    def subset_indicators(self, region: ParamRegion, eps: float) -> np.ndarray:
        # set inclusion in A == not meeting the complement of A
        try:
            prep = self.prepare(ComplementRegion(region))
        except EmptyRegionError:
            # nothing lies outside the region: every resample set is inside
            return np.ones(self.B, dtype=np.uint8)
        return 1 - self.intersect_indicators(prep, eps)

    def _estimate(self, indicators: np.ndarray, eps: float) -> PlausibilityEstimate:
        valid = np.isfinite(self._min_risks)
        skipped = int(self.B - valid.sum())
        if skipped == self.B:
            raise UndefinedPlausibilityError(
                "every resample produced an empty almost-minimizer set")
        value = float(indicators[valid].mean())
        return PlausibilityEstimate(value, float(eps), self.B, skipped,
                                    "bootstrap", self.seed)

    def plausibility(self, region: ParamRegion, eps: float,
                     prep=None) -> PlausibilityEstimate:
        prep = self.prepare(region) if prep is None else prep
        return self._estimate(self.intersect_indicators(prep, eps), eps)

    def belief(self, region: ParamRegion, eps: float) -> PlausibilityEstimate:
        return self._estimate(self.subset_indicators(region, eps), eps)


def bootstrap_plausibility(model: ModelSpec, sample: LabeledSample, eps: float,
                           region: ParamRegion, B: int, seed: int = 0,
                           return_indicators: bool = False):
    """Estimate the plausibility of ``region`` by resampling the sample.

    Deterministic given ``seed``; identical for every worker count.
    """
    if eps < 0.0:
        raise ConfigurationError("eps must be >= 0")
    rs = ResampleSet(model, sample, B, seed)
    prep = rs.prepare(region)
    est = rs.plausibility(region, eps, prep=prep)
    if return_indicators:
        return est, rs.intersect_indicators(prep, eps)
    return est


def bootstrap_belief(model: ModelSpec, sample: LabeledSample, eps: float,
                     region: ParamRegion, B: int, seed: int = 0) -> PlausibilityEstimate:
    """Estimate the belief (dual of plausibility) of ``region``."""
    if eps < 0.0:
        raise ConfigurationError("eps must be >= 0")
    return ResampleSet(model, sample, B, seed).belief(region, eps)


def mc_plausibility(generator, model: ModelSpec, eps: float, region: ParamRegion,
                    replicates: int, seed: int = 0,
                    return_indicators: bool = False):
    """Plausibility under a known generator: fresh samples instead of resamples."""
    if eps < 0.0:
        raise ConfigurationError("eps must be >= 0")
    if replicates < 1:
        raise ConfigurationError("replicates must be >= 1")
    base = derive_seed(seed, "mc-plausibility")

    def one(i: int) -> int:
        rng = stream_rng(base, i)
        sample = generator.draw(rng)
        engine = make_engine(model, sample)
        prep = engine.prepare_region(region)
        stats = engine.base_stats()
        return int(engine.region_min(prep, stats)
                   <= engine.min_risk(stats) + eps + TOL_OPT)

    indicators = np.array(indexed_map(one, range(replicates)), dtype=np.uint8)
    est = PlausibilityEstimate(float(indicators.mean()), float(eps),
                               replicates, 0, "monte-carlo", seed)
    if return_indicators:
        return est, indicators
    return est


# ---------------------------------------------------------------------------
# replicate bounds and hypothesis tests


def bernstein_min_B(gamma: float) -> int:
    """Resamples needed so the empirical bootstrap plausibility keeps
    validity with slack gamma: ceil((4g + 3) ln(1/g) / (6 g^2))."""
    if not 0.0 < gamma < 1.0:
        raise ConfigurationError("gamma must lie in (0, 1)")
    raw = (4.0 * gamma + 3.0) * math.log(1.0 / gamma) / (6.0 * gamma * gamma)
    return max(1, int(math.ceil(raw)))


def bootstrap_deviation_prob(gamma: float, B: int) -> float:
    """exp(-6 B g^2 / (4g + 3)): chance the B-resample average undershoots
    its limit by more than gamma."""
    return math.exp(-6.0 * B * gamma * gamma / (4.0 * gamma + 3.0))


@dataclass(frozen=True)
class TestConfig:
    """Configuration of a plausibility test of H0: the minimizer lies in ``region``."""

    alpha: float
    gamma: float
    B: int
    mode: str              # "level-first" or "tolerance-first"
    region: ParamRegion
    ucf: UcfSpec

    def __post_init__(self):
        if not 0.0 < self.gamma < self.alpha < 1.0:
            raise ConfigurationError("test requires 0 < gamma < alpha < 1")
        if self.B < 1:
            raise ConfigurationError("B must be >= 1")
        if self.mode not in ("level-first", "tolerance-first"):
            raise ConfigurationError(f"unknown test mode {self.mode!r}")


@dataclass(frozen=True)
class TestResult:
    plausibility: PlausibilityEstimate
    threshold: float
    reject: bool
    type1_bound: float
    eps_used: float

    def to_dict(self) -> dict:
        return {
            "plausibility": self.plausibility.to_dict(),
            "threshold": self.threshold,
            "reject": self.reject,
            "type1_bound": self.type1_bound,
            "eps_used": self.eps_used,
        }


def test_level_first(model: ModelSpec, sample: LabeledSample, cfg: TestConfig,
                     seed: int = 0) -> TestResult:
    """Keep the type-I level at alpha; pay with a wider tolerance at alpha - gamma.

    Requires enough resamples for the Bernstein bound at slack gamma.
    """
    if cfg.mode != "level-first":
        raise ConfigurationError("config mode is not level-first")
    need = bernstein_min_B(cfg.gamma)
    if cfg.B < need:
        raise ConfigurationError(
            f"level-first test at gamma={cfg.gamma} requires B >= {need}, got {cfg.B}")
    eps = validity_tolerance(cfg.ucf, sample.m, cfg.alpha - cfg.gamma)
    pl = bootstrap_plausibility(model, sample, eps, cfg.region, cfg.B, seed)
    threshold = 1.0 - cfg.alpha
    return TestResult(pl, threshold, pl.value < threshold, cfg.alpha, eps)


def test_tolerance_first(model: ModelSpec, sample: LabeledSample, cfg: TestConfig,
                         seed: int = 0) -> TestResult:
    """Keep the tolerance at alpha; pay with a looser type-I bound
    alpha + exp(-6 B gamma^2 / (4 gamma + 3))."""
    if cfg.mode != "tolerance-first":
        raise ConfigurationError("config mode is not tolerance-first")
    threshold = 1.0 - cfg.alpha - cfg.gamma
    if threshold <= 0.0:
        raise ConfigurationError("tolerance-first test requires alpha + gamma < 1")
    eps = validity_tolerance(cfg.ucf, sample.m, cfg.alpha)
    pl = bootstrap_plausibility(model, sample, eps, cfg.region, cfg.B, seed)
    bound = cfg.alpha + bootstrap_deviation_prob(cfg.gamma, cfg.B)
    return TestResult(pl, threshold, pl.value < threshold, bound, eps)


def optimal_type1_bound(B: int) -> tuple[float, float, float]:
    """Best guaranteed type-I bound of the tolerance-first test at fixed B.

    Minimizes ``alpha + exp(-6 B g^2/(4g + 3))`` over 0 < g < alpha < 1 on a
    1e-4 grid; the optimum sits on the boundary alpha = gamma, approached
    with a vanishing offset.
    """
    if B < 1:
        raise ConfigurationError("B must be >= 1")
    g = np.arange(1e-4, 1.0, 1e-4)
    alpha = g + 1e-9
    bound = alpha + np.exp(-6.0 * B * g * g / (4.0 * g + 3.0))
    i = int(np.argmin(bound))
    return float(alpha[i]), float(g[i]), float(bound[i])


def conf_of_region_boot(model: ModelSpec, sample: LabeledSample, ucf: UcfSpec,
                        region: ParamRegion, B: int, seed: int = 0,
                        grid_size: int = 128) -> float:
    """Confidence in ``region`` from bootstrapped plausibility.

    Largest sustained level: 1 minus the highest alpha at which the
    bootstrap plausibility at tolerance ``validity_tolerance(ucf, m, alpha)``
    still falls below 1 - alpha.  Resamples are drawn once and reused across
    alpha values, so the scan is free of resampling noise.
    """
    rs = ResampleSet(model, sample, B, seed)
    prep = rs.prepare(region)
    m = sample.m

    def fails(alpha: float) -> bool:
        eps = validity_tolerance(ucf, m, alpha)
        return rs.plausibility(region, eps, prep=prep).value < 1.0 - alpha

    alphas = np.linspace(1e-6, 1.0 - 1e-6, grid_size)
    failing = [a for a in alphas if fails(a)]
    if not failing:
        return 1.0
    top = max(failing)
    if top == alphas[-1]:
        return 0.0
    lo, hi = top, float(alphas[np.searchsorted(alphas, top) + 1])
    while hi - lo > ALPHA_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if fails(mid):
            lo = mid
        else:
            hi = mid
    return 1.0 - 0.5 * (lo + hi)
