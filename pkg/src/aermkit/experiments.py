"""Desk-scale experiment harness.

Three experiments: the L1-regression tuning-parameter plausibility curve,
the Bernoulli bootstrap coverage sweep, and a quantile confidence-set demo.
Every experiment is a pure function of its config (same config + seed gives
byte-identical CSV output).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .aerm import aerm_contains, build_aerm_set
from .errors import ConfigurationError
from .generators import (BernoulliGenerator, GeneratorSpec,
                         LabeledDistributionGenerator, LassoLinearGenerator,
                         quantile_v_sup, true_risk_minimizer)
from .jsonio import write_csv, write_json
from .model import bernoulli_mode_model, constant_quantile_model, l1_linear_model
from .plausibility import bernstein_min_B, bootstrap_plausibility
from .regions import FiniteRegion, L1BallRegion
from .risk import TOL_OPT, make_engine
from .rngstreams import derive_seed, indexed_map, stream_rng
from .ucf import (BernoulliExactUcf, LassoExponentialUcf, QuantileVarianceUcf,
                  UcfSpec, coverage_tolerance, required_m, validity_tolerance)

EXPERIMENT_NAMES = ("lasso-plaus-curve", "bernoulli-coverage", "quantile-demo")


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    generator: GeneratorSpec
    alpha: float = 0.05
    gamma: float | None = None          # bernoulli-coverage only
    grid: tuple = ()                    # t' values or sample sizes
    replicates: int = 1000              # Monte-Carlo replicates (curve)
    trials: int = 200                   # repeated-sampling trials (coverage/demo)
    B: int | None = None                # bootstrap resamples; default Bernstein bound
    seed: int = 0
    ucf: UcfSpec | None = None          # override the experiment's derived bound
    radius: float = 10.0                # L1 ball radius of the regression model
    tau: float = 0.5                    # quantile level (demo)
    theta_lo: float | None = None       # quantile parameter interval (demo)
    theta_hi: float | None = None

    def __post_init__(self):
        if self.name not in EXPERIMENT_NAMES:
            raise ConfigurationError(f"unknown experiment {self.name!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigurationError("alpha must lie in (0, 1)")
        if self.replicates < 1 or self.trials < 1:
            raise ConfigurationError("replicate counts must be >= 1")
        object.__setattr__(self, "grid", tuple(self.grid))


# ---------------------------------------------------------------------------
# L1-regression tuning-parameter plausibility curve


@dataclass(frozen=True)
class LassoCurveResult:
    beta0: np.ndarray
    eps: float
    ucf_scale: float
    alpha: float
    replicates: int
    seed: int
    rows: tuple            # (t_prime, plausibility, mc_error)
    crossing: float | None

    def report(self) -> dict:
        return {
            "experiment": "lasso-plaus-curve",
            "alpha": self.alpha,
            "replicates": self.replicates,
            "seed": self.seed,
            "eps": self.eps,
            "ucf_scale": self.ucf_scale,
            "beta0": self.beta0,
            "beta0_l1": float(np.abs(self.beta0).sum()),
            "beta0_l2": float(np.sqrt(self.beta0 @ self.beta0)),
            "crossing": self.crossing,
        }


def run_lasso_plaus_curve(cfg: ExperimentConfig) -> LassoCurveResult:
    """Plausibility of {beta : ||beta||_1 <= t'} across a grid of t'.

    The per-replicate sample is drawn once and scored against every t', so
    the curve is exactly monotone in t' on shared replicates.  The smallest
    grid t' with plausibility >= 1 - alpha is reported as the crossing.
    """
    if cfg.name != "lasso-plaus-curve":
        raise ConfigurationError("config is not a lasso-plaus-curve config")
    gen = cfg.generator
    if not isinstance(gen, LassoLinearGenerator):
        raise ConfigurationError("lasso-plaus-curve needs a lasso-linear generator")
    model = l1_linear_model(cfg.radius, gen.p_dim)
    grid = cfg.grid or _default_tprime_grid(cfg.radius)
    if any(t < 0 for t in grid):
        raise ConfigurationError("t' grid values must be >= 0")

    # tolerance needed for validity at this m: solve the exponential
    # coverage bound at level alpha with scale ||beta0||_2 + 1
    scale = float(np.sqrt(gen.beta0 @ gen.beta0)) + 1.0
    ucf = cfg.ucf if cfg.ucf is not None else LassoExponentialUcf(scale)
    eps = coverage_tolerance(ucf, gen.m, cfg.alpha)

    base = derive_seed(cfg.seed, "lasso-mc")
    regions = [L1BallRegion(float(t)) for t in grid]

    def one(r: int) -> np.ndarray:
        rng = stream_rng(base, r)
        sample = gen.draw(rng)
        engine = make_engine(model, sample)
        preps = [engine.prepare_region(rg) for rg in regions]
        q = engine.base_stats()
        budget = engine.min_risk(q) + eps + TOL_OPT
        hits = np.zeros(len(preps), dtype=np.int64)
        for j, prep in enumerate(preps):
            hits[j] = engine.region_min(prep, q) <= budget
        return hits

    counts = np.sum(indexed_map(one, range(cfg.replicates)), axis=0)
    pl = counts / cfg.replicates
    err = np.sqrt(pl * (1.0 - pl) / cfg.replicates)
    rows = tuple((float(t), float(p), float(e)) for t, p, e in zip(grid, pl, err))
    crossing = next((float(t) for t, p, _ in rows if p >= 1.0 - cfg.alpha), None)
    return LassoCurveResult(gen.beta0, eps, scale, cfg.alpha, cfg.replicates,
                            cfg.seed, rows, crossing)


def _default_tprime_grid(radius: float) -> tuple:
    fine = np.round(np.arange(0.0, 4.0001, 0.1), 10)
    coarse = [5.0, 6.0, 8.0, radius]
    vals = sorted({float(v) for v in list(fine) + coarse if v <= radius})
    return tuple(vals)


def draw_beta0(seed: int, p_dim: int) -> np.ndarray:
    """The experiment's coefficient draw: Unif(-1, 1)^p from the config seed."""
    return stream_rng(derive_seed(seed, "beta0"), 0).uniform(-1.0, 1.0, p_dim)


# ---------------------------------------------------------------------------
# Bernoulli bootstrap coverage sweep


@dataclass(frozen=True)
class BernoulliCoverageResult:
    p: float
    alpha: float
    gamma: float
    B: int
    trials: int
    m_star: int
    seed: int
    rows: tuple            # (m, eps, frequency)

    def report(self) -> dict:
        return {
            "experiment": "bernoulli-coverage",
            "p": self.p,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "B": self.B,
            "trials": self.trials,
            "m_star": self.m_star,
            "seed": self.seed,
        }


def run_bernoulli_coverage(cfg: ExperimentConfig) -> BernoulliCoverageResult:
    """Frequency of {bootstrap plausibility of {0} >= 1 - alpha} across m.

    The theoretical threshold m* is the smallest m at which the exact
    binomial bound certifies tolerance (1 - 2p) at level alpha - gamma,
    i.e. the sample size where the asymptotic-validity premise kicks in.
    """
    if cfg.name != "bernoulli-coverage":
        raise ConfigurationError("config is not a bernoulli-coverage config")
    gen = cfg.generator
    if not isinstance(gen, BernoulliGenerator):
        raise ConfigurationError("bernoulli-coverage needs a bernoulli generator")
    gamma = cfg.gamma if cfg.gamma is not None else cfg.alpha / 2.0
    if not 0.0 < gamma < cfg.alpha:
        raise ConfigurationError("requires 0 < gamma < alpha")
    if gen.p >= 0.5:
        raise ConfigurationError(
            "coverage of the region {0} needs p < 0.5 so that 0 is the minimizer")
    ucf = cfg.ucf if cfg.ucf is not None else BernoulliExactUcf()
    delta = 1.0 - 2.0 * gen.p
    m_star = required_m(ucf, delta / 2.0, cfg.alpha - gamma)
    grid = cfg.grid or _default_m_grid(m_star)
    B = cfg.B if cfg.B is not None else bernstein_min_B(gamma)

    model = bernoulli_mode_model()
    region = FiniteRegion((np.array([0.0]),))
    rows = []
    for m in grid:
        m = int(m)
        eps = validity_tolerance(ucf, m, cfg.alpha - gamma)
        sample_base = derive_seed(cfg.seed, "coverage-sample", m)
        boot_base = derive_seed(cfg.seed, "coverage-boot", m)

        def one(t: int) -> int:
            rng = stream_rng(sample_base, t)
            sample = BernoulliGenerator(gen.p, m).draw(rng)
            pl = bootstrap_plausibility(model, sample, eps, region, B,
                                        seed=derive_seed(boot_base, t))
            return int(pl.value >= 1.0 - cfg.alpha)

        freq = float(np.mean(indexed_map(one, range(cfg.trials))))
        rows.append((m, float(eps), freq))
    return BernoulliCoverageResult(gen.p, cfg.alpha, gamma, B, cfg.trials,
                                   m_star, cfg.seed, tuple(rows))


def _default_m_grid(m_star: int) -> tuple:
    raw = [math.ceil(0.3 * m_star), math.ceil(0.6 * m_star), m_star,
           math.ceil(1.5 * m_star), 2 * m_star]
    return tuple(sorted(set(max(1, m) for m in raw)))


# ---------------------------------------------------------------------------
# quantile confidence-set demo


@dataclass(frozen=True)
class QuantileDemoResult:
    tau: float
    v_sup: float
    m: int
    eps: float
    alpha: float
    trials: int
    seed: int
    true_quantile: float
    coverage: float

    def report(self) -> dict:
        return {
            "experiment": "quantile-demo",
            "tau": self.tau,
            "v_sup": self.v_sup,
            "m": self.m,
            "eps": self.eps,
            "alpha": self.alpha,
            "trials": self.trials,
            "seed": self.seed,
            "true_quantile": self.true_quantile,
            "coverage": self.coverage,
        }


def run_quantile_demo(cfg: ExperimentConfig) -> QuantileDemoResult:
    """Coverage of the true quantile by the almost-minimizer confidence set."""
    if cfg.name != "quantile-demo":
        raise ConfigurationError("config is not a quantile-demo config")
    gen = cfg.generator
    if not isinstance(gen, LabeledDistributionGenerator):
        raise ConfigurationError("quantile-demo needs a labeled-distribution generator")
    lo, hi = gen.law.support
    lo = cfg.theta_lo if cfg.theta_lo is not None else float(lo)
    hi = cfg.theta_hi if cfg.theta_hi is not None else float(hi)
    if not lo < hi:
        lo, hi = lo - 1.0, hi + 1.0
    model = constant_quantile_model(cfg.tau, lo, hi)
    if cfg.ucf is not None:
        ucf = cfg.ucf
    else:
        ucf = QuantileVarianceUcf(cfg.tau, quantile_v_sup(gen.law, cfg.tau, lo, hi))
    eps = validity_tolerance(ucf, gen.m, cfg.alpha)
    theta0 = true_risk_minimizer(gen, model)
    base = derive_seed(cfg.seed, "quantile-trial")

    def one(t: int) -> int:
        sample = gen.draw(stream_rng(base, t))
        aerm = build_aerm_set(model, sample, eps)
        return int(aerm_contains(aerm, theta0))

    coverage = float(np.mean(indexed_map(one, range(cfg.trials))))
    return QuantileDemoResult(cfg.tau, ucf.v_sup, gen.m, float(eps), cfg.alpha,
                              cfg.trials, cfg.seed, float(theta0[0]), coverage)


# ---------------------------------------------------------------------------
# dispatch and output


def run_experiment(cfg: ExperimentConfig, outdir: str | None = None):
    """Run an experiment by name; optionally write CSV + JSON into outdir."""
    if cfg.name == "lasso-plaus-curve":
        result = run_lasso_plaus_curve(cfg)
        header, rows = ["t_prime", "plausibility", "mc_error"], result.rows
    elif cfg.name == "bernoulli-coverage":
        result = run_bernoulli_coverage(cfg)
        header, rows = ["m", "eps", "frequency"], result.rows
    else:
        result = run_quantile_demo(cfg)
        header = ["m", "eps", "coverage"]
        rows = [(result.m, result.eps, result.coverage)]
    if outdir is not None:
        os.makedirs(outdir, exist_ok=True)
        write_csv(os.path.join(outdir, f"{cfg.name}.csv"), header, rows)
        write_json(result.report(), os.path.join(outdir, "report.json"))
    return result
