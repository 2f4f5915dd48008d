"""JSON config schema: models, bounds, regions, generators, experiments."""

from __future__ import annotations

import json

import numpy as np

from .errors import ConfigurationError
from .experiments import ExperimentConfig
from .generators import (BernoulliGenerator, GeneratorSpec,
                         LabeledDistributionGenerator, LassoLinearGenerator,
                         NormalLaw, PointMassLaw, UniformLaw)
from .model import (FiniteSpace, IntervalSpace, L1BallSpace, Loss, ModelSpec,
                    ParamSpace)
from .regions import (BoxRegion, ComplementRegion, FiniteRegion, L1BallRegion,
                      ParamRegion, UnionRegion)
from .ucf import (BernoulliExactUcf, ChebyshevUcf, LassoExponentialUcf,
                  QuantileVarianceUcf, RademacherUcf, SubexponentialUcf,
                  UcfSpec)


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"{path}: {exc}") from None


def _need(d: dict, key: str, what: str):
    if key not in d:
        raise ConfigurationError(f"{what} config is missing {key!r}")
    return d[key]


# -- parameter spaces and models --------------------------------------------

def param_space_from_dict(d: dict) -> ParamSpace:
    kind = _need(d, "kind", "param_space")
    if kind == "finite":
        return FiniteSpace(tuple(np.asarray(p, dtype=np.float64)
                                 for p in _need(d, "points", "finite space")))
    if kind == "interval":
        return IntervalSpace(_need(d, "lo", "interval space"),
                             _need(d, "hi", "interval space"))
    if kind == "l1-ball":
        return L1BallSpace(float(_need(d, "radius", "l1-ball space")),
                           int(_need(d, "dim", "l1-ball space")))
    raise ConfigurationError(f"unknown param_space kind {kind!r}")


def model_from_dict(d: dict) -> ModelSpec:
    family = _need(d, "family", "model")
    loss_d = _need(d, "loss", "model")
    if isinstance(loss_d, str):
        loss = Loss(loss_d)
    else:
        loss = Loss(_need(loss_d, "kind", "loss"), loss_d.get("tau"))
    return ModelSpec(family, loss, param_space_from_dict(_need(d, "param_space", "model")))


def model_to_dict(model: ModelSpec) -> dict:
    space = model.param_space
    if isinstance(space, FiniteSpace):
        sd = {"kind": "finite", "points": [list(p) for p in space.points]}
    elif isinstance(space, IntervalSpace):
        sd = {"kind": "interval", "lo": list(space.lo), "hi": list(space.hi)}
    else:
        sd = {"kind": "l1-ball", "radius": space.radius, "dim": space.dim}
    loss = {"kind": model.loss.kind}
    if model.loss.tau is not None:
        loss["tau"] = model.loss.tau
    return {"family": model.family, "loss": loss, "param_space": sd}


# -- uniform convergence bounds ----------------------------------------------

def ucf_from_dict(d: dict) -> UcfSpec:
    kind = _need(d, "kind", "ucf")
    if kind == "bernoulli-exact":
        return BernoulliExactUcf()
    if kind == "chebyshev-variance":
        return ChebyshevUcf(float(_need(d, "V", "chebyshev ucf")))
    if kind == "subexponential":
        return SubexponentialUcf(float(_need(d, "sigma2", "subexponential ucf")))
    if kind == "quantile-variance":
        return QuantileVarianceUcf(float(_need(d, "tau", "quantile ucf")),
                                   float(_need(d, "V_sup", "quantile ucf")))
    if kind == "lasso-exponential":
        return LassoExponentialUcf(float(_need(d, "c", "lasso ucf")))
    if kind == "rademacher":
        return RademacherUcf(float(_need(d, "M", "rademacher ucf")),
                             float(_need(d, "lambda", "rademacher ucf")),
                             float(_need(d, "sq_norm_sum", "rademacher ucf")))
    raise ConfigurationError(f"unknown ucf kind {kind!r}")


def ucf_params(ucf: UcfSpec) -> dict:
    if isinstance(ucf, ChebyshevUcf):
        return {"V": ucf.variance}
    if isinstance(ucf, SubexponentialUcf):
        return {"sigma2": ucf.sigma2}
    if isinstance(ucf, QuantileVarianceUcf):
        return {"tau": ucf.tau, "V_sup": ucf.v_sup}
    if isinstance(ucf, LassoExponentialUcf):
        return {"c": ucf.c}
    if isinstance(ucf, RademacherUcf):
        return {"M": ucf.M, "lambda": ucf.lam, "sq_norm_sum": ucf.sq_norm_sum}
    return {}


def ucf_to_dict(ucf: UcfSpec) -> dict:
    return {"kind": ucf.kind, **ucf_params(ucf)}


# -- regions ------------------------------------------------------------------

def region_from_dict(d: dict) -> ParamRegion:
    kind = _need(d, "kind", "region")
    if kind == "finite":
        return FiniteRegion(tuple(np.asarray(p, dtype=np.float64)
                                  for p in _need(d, "points", "finite region")))
    if kind == "box":
        return BoxRegion(_need(d, "lo", "box region"), _need(d, "hi", "box region"))
    if kind == "l1-ball":
        return L1BallRegion(float(_need(d, "radius", "l1-ball region")))
    if kind == "complement":
        return ComplementRegion(region_from_dict(_need(d, "of", "complement region")))
    if kind == "union":
        return UnionRegion(tuple(region_from_dict(m)
                                 for m in _need(d, "members", "union region")))
    raise ConfigurationError(f"unknown region kind {kind!r}")


# -- generators ----------------------------------------------------------------

def law_from_dict(d: dict):
    name = _need(d, "name", "law")
    if name == "uniform":
        return UniformLaw(float(_need(d, "a", "uniform law")),
                          float(_need(d, "b", "uniform law")))
    if name == "point-mass":
        return PointMassLaw(float(_need(d, "value", "point-mass law")))
    if name == "normal":
        return NormalLaw(float(_need(d, "mu", "normal law")),
                         float(_need(d, "sigma", "normal law")))
    raise ConfigurationError(f"unknown law {name!r}")


def generator_from_dict(d: dict, seed: int = 0) -> GeneratorSpec:
    kind = _need(d, "kind", "generator")
    m = int(_need(d, "m", "generator"))
    if kind == "bernoulli":
        return BernoulliGenerator(float(_need(d, "p", "bernoulli generator")), m)
    if kind == "lasso-linear":
        beta0 = d.get("beta0", "random")
        if isinstance(beta0, str):
            if beta0 != "random":
                raise ConfigurationError("beta0 must be a vector or 'random'")
            from .experiments import draw_beta0
            beta0 = draw_beta0(seed, int(_need(d, "p_dim", "lasso generator")))
        return LassoLinearGenerator(np.asarray(beta0, dtype=np.float64), m)
    if kind == "labeled-distribution":
        return LabeledDistributionGenerator(law_from_dict(_need(d, "law", "generator")), m)
    raise ConfigurationError(f"unknown generator kind {kind!r}")


# -- experiments ----------------------------------------------------------------

def experiment_from_dict(d: dict) -> ExperimentConfig:
    name = _need(d, "name", "experiment")
    seed = int(d.get("seed", 0))
    gen = generator_from_dict(_need(d, "generator", "experiment"), seed=seed)
    kwargs = {}
    for key in ("alpha", "gamma", "radius", "tau", "theta_lo", "theta_hi"):
        if key in d and d[key] is not None:
            kwargs[key] = float(d[key])
    for key in ("replicates", "trials", "B"):
        if key in d and d[key] is not None:
            kwargs[key] = int(d[key])
    if "grid" in d and d["grid"] is not None:
        kwargs["grid"] = tuple(d["grid"])
    if "ucf" in d and d["ucf"] is not None:
        kwargs["ucf"] = ucf_from_dict(d["ucf"])
    return ExperimentConfig(name=name, generator=gen, seed=seed, **kwargs)
