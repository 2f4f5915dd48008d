"""Parameter-space regions: the sets whose plausibility is assessed."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .model import BALL_TOL


@dataclass(frozen=True)
class FiniteRegion:
    points: tuple

    kind = "finite"

    def __post_init__(self):
        pts = tuple(np.asarray(p, dtype=np.float64).ravel() for p in self.points)
        if not pts:
            raise ConfigurationError("finite region must list at least one point")
        for p in pts:
            p.setflags(write=False)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class BoxRegion:
    lo: np.ndarray
    hi: np.ndarray

    kind = "box"

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=np.float64).ravel()
        hi = np.asarray(self.hi, dtype=np.float64).ravel()
        if lo.size != hi.size or lo.size == 0:
            raise ConfigurationError("box bounds must be nonempty and equal-length")
        if np.any(lo > hi):
            raise ConfigurationError("box requires lo <= hi coordinatewise")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


@dataclass(frozen=True)
class L1BallRegion:
    radius: float

    kind = "l1-ball"

    def __post_init__(self):
        if self.radius < 0.0:
            raise ConfigurationError("l1-ball region radius must be >= 0")


@dataclass(frozen=True)
class ComplementRegion:
    inner: "ParamRegion"

    kind = "complement"


@dataclass(frozen=True)
class UnionRegion:
    members: tuple

    kind = "union"

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ConfigurationError("union region must have at least one member")
        object.__setattr__(self, "members", members)


ParamRegion = FiniteRegion | BoxRegion | L1BallRegion | ComplementRegion | UnionRegion


def region_contains(region: ParamRegion, theta: np.ndarray,
                    tol: float = BALL_TOL) -> bool:
    """Membership test, recursing through complements and unions."""
    theta = np.asarray(theta, dtype=np.float64).ravel()
    if isinstance(region, FiniteRegion):
        return any(p.size == theta.size and np.allclose(theta, p, rtol=0.0, atol=tol)
                   for p in region.points)
    if isinstance(region, BoxRegion):
        if region.lo.size != theta.size:
            raise ConfigurationError(
                f"box region has dimension {region.lo.size}, parameter {theta.size}")
        return bool(np.all(theta >= region.lo - tol)
                    and np.all(theta <= region.hi + tol))
    if isinstance(region, L1BallRegion):
        return float(np.abs(theta).sum()) <= region.radius + tol
    if isinstance(region, ComplementRegion):
        return not region_contains(region.inner, theta, tol)
    if isinstance(region, UnionRegion):
        return any(region_contains(m, theta, tol) for m in region.members)
    raise ConfigurationError(f"unknown region type {type(region).__name__}")


def intervals_1d(region: ParamRegion, lo: float, hi: float) -> list[tuple[float, float]]:
    """Reduce a region to closed intervals within [lo, hi] (1-D spaces only).

    Finite points become degenerate intervals.  Complements are taken with
    closed boundaries, which is harmless for continuous risk profiles.
    """
    if isinstance(region, FiniteRegion):
        out = []
        for p in region.points:
            if p.size != 1:
                raise ConfigurationError("finite region point is not 1-D")
            v = float(p[0])
            if lo - BALL_TOL <= v <= hi + BALL_TOL:
                v = min(max(v, lo), hi)
                out.append((v, v))
        return out
    if isinstance(region, BoxRegion):
        if region.lo.size != 1:
            raise ConfigurationError("box region is not 1-D")
        a, b = max(float(region.lo[0]), lo), min(float(region.hi[0]), hi)
        return [(a, b)] if a <= b else []
    if isinstance(region, L1BallRegion):
        a, b = max(-region.radius, lo), min(region.radius, hi)
        return [(a, b)] if a <= b else []
    if isinstance(region, ComplementRegion):
        inner = _merge(intervals_1d(region.inner, lo, hi))
        out, cursor = [], lo
        for a, b in inner:
            if a > cursor:
                out.append((cursor, a))
            cursor = max(cursor, b)
        if cursor < hi:
            out.append((cursor, hi))
        if not inner:
            return [(lo, hi)]
        return out
    if isinstance(region, UnionRegion):
        out = []
        for m in region.members:
            out.extend(intervals_1d(m, lo, hi))
        return _merge(out)
    raise ConfigurationError(f"unknown region type {type(region).__name__}")


def _merge(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    if not intervals:
        return []
    intervals = sorted(intervals)
    merged = [intervals[0]]
    for a, b in intervals[1:]:
        pa, pb = merged[-1]
        if a <= pb:
            merged[-1] = (pa, max(pb, b))
        else:
            merged.append((a, b))
    return merged
