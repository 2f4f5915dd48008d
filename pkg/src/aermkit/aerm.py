"""Almost-minimizer sets as decision procedures, and the confidence sets
they induce.

The set of eps-almost empirical risk minimizers,
``{theta : empirical_risk(theta) <= min empirical risk + eps}``, is never
enumerated; it is queried through membership, intersection, and superset
decisions.  Optimizer slack is always added on the feasible side, so solver
error can only enlarge the set, preserving the conservative direction of
the coverage guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError
from .model import ModelSpec
from .regions import ParamRegion
from .risk import TOL_OPT, empirical_risk, erm_solve, make_engine
from .sample import LabeledSample
from .ucf import UcfSpec, required_m, validity_tolerance

ALPHA_BISECT_TOL = 1e-4
EPS_BISECT_TOL = 1e-6


@dataclass(frozen=True)
class AermSet:
    """The eps-almost-minimizer set of a model on a sample."""

    model: ModelSpec
    sample: LabeledSample
    eps: float
    min_risk: float
    theta_hat: np.ndarray

    @property
    def threshold(self) -> float:
        return self.min_risk + self.eps + TOL_OPT


def build_aerm_set(model: ModelSpec, sample: LabeledSample, eps: float) -> AermSet:
    if eps < 0.0:
        raise ValueError("eps must be >= 0")
    theta, min_risk = erm_solve(model, sample)
    return AermSet(model, sample, float(eps), min_risk, theta)


def aerm_contains(aerm: AermSet, theta) -> bool:
    """Is ``theta`` within eps of the empirical minimum?"""
    risk = empirical_risk(aerm.model, aerm.sample, theta)
    return risk <= aerm.threshold


def aerm_intersects(aerm: AermSet, region: ParamRegion) -> bool:
    """Does the almost-minimizer set meet the region?"""
    engine = make_engine(aerm.model, aerm.sample)
    prep = engine.prepare_region(region)
    return engine.region_min(prep, engine.base_stats()) <= aerm.threshold


def aerm_superset(aerm: AermSet, region: ParamRegion) -> bool:
    """Does the almost-minimizer set contain the whole region?"""
    engine = make_engine(aerm.model, aerm.sample)
    prep = engine.prepare_region(region)
    return engine.region_max(prep, engine.base_stats()) <= aerm.threshold


@dataclass(frozen=True)
class ConfidenceSetReport:
    """Provenance of a confidence set: tolerance, level, and which premise held."""

    eps: float
    alpha: float
    m: int
    ucf_kind: str
    guarantee: str                  # "point-minimizer" or "risk-neighborhood"
    delta: float | None = None
    ucf_params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "eps": self.eps,
            "alpha": self.alpha,
            "m": self.m,
            "ucf_kind": self.ucf_kind,
            "guarantee": self.guarantee,
        }
        if self.delta is not None:
            out["delta"] = self.delta
        if self.ucf_params:
            out["ucf_params"] = dict(self.ucf_params)
        return out


def confidence_set(model: ModelSpec, sample: LabeledSample, ucf: UcfSpec,
                   alpha: float, delta: float | None = None,
                   ) -> tuple[AermSet, ConfidenceSetReport]:
    """Build the almost-minimizer set that covers the target at level 1 - alpha.

    With ``delta=None`` the target is the risk minimizer itself and the
    tolerance is ``validity_tolerance(ucf, m, alpha)``.  With ``delta >= 0``
    the target is the set of parameters within ``delta`` of minimal risk and
    the tolerance solves ``m >= required_m((eps - delta) / 2, alpha)`` with
    the smallest feasible ``eps >= delta``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    m = sample.m
    from .config import ucf_params  # deferred: config depends on this module

    if delta is None:
        eps = validity_tolerance(ucf, m, alpha)
        eps = _nudge_feasible(lambda e: required_m(ucf, e / 2.0, alpha) <= m, eps)
        report = ConfidenceSetReport(eps, alpha, m, ucf.kind, "point-minimizer",
                                     ucf_params=ucf_params(ucf))
        return build_aerm_set(model, sample, eps), report

    if delta < 0.0:
        raise ValueError("delta must be >= 0")
    if delta == 0.0:
        aerm, report = confidence_set(model, sample, ucf, alpha, None)
        report = ConfidenceSetReport(report.eps, alpha, m, ucf.kind,
                                     "risk-neighborhood", delta=0.0,
                                     ucf_params=ucf_params(ucf))
        return aerm, report

    def feasible(eps: float) -> bool:
        if eps <= delta:
            return False
        return required_m(ucf, (eps - delta) / 2.0, alpha) <= m

    hi = delta + 1.0
    for _ in range(80):
        if feasible(hi):
            break
        hi = delta + 2.0 * (hi - delta)
    else:
        raise InfeasibleError(
            "no finite tolerance satisfies the neighborhood premise at this m",
            min_m=required_m(ucf, EPS_BISECT_TOL / 2.0, alpha))
    lo = delta
    while hi - lo > EPS_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    eps = max(hi, delta)  # premise already verified at hi
    report = ConfidenceSetReport(eps, alpha, m, ucf.kind, "risk-neighborhood",
                                 delta=delta, ucf_params=ucf_params(ucf))
    return build_aerm_set(model, sample, eps), report


def _nudge_feasible(pred, eps: float, tries: int = 8) -> float:
    """Bump eps by relative ulps until the integer premise holds exactly."""
    for _ in range(tries):
        if pred(eps):
            return eps
        eps = np.nextafter(eps * (1.0 + 1e-12), np.inf)
    return eps


def conf_of_region_aerm(model: ModelSpec, sample: LabeledSample, ucf: UcfSpec,
                        region: ParamRegion) -> float:
    """Confidence assigned to a region through the almost-minimizer set alone.

    Returns the level attached to the tightest tolerance that still makes
    the set contain the region: 1 when even the smallest tolerance covers
    it, 0 when no tolerance does, and otherwise ``1 - alpha*`` where
    ``alpha*`` is the boundary level at which
    ``validity_tolerance(ucf, m, alpha)`` matches the region's excess risk.
    """
    m = sample.m
    engine = make_engine(model, sample)
    prep = engine.prepare_region(region)
    stats = engine.base_stats()
    gap_budget = engine.region_max(prep, stats) - engine.min_risk(stats) - TOL_OPT

    def holds(alpha: float) -> bool:
        return gap_budget <= validity_tolerance(ucf, m, alpha)

    lo, hi = 1e-9, 1.0 - 1e-9
    if holds(hi):
        return 1.0
    if not holds(lo):
        return 0.0
    while hi - lo > ALPHA_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return 1.0 - 0.5 * (lo + hi)
