"""The ``aermctl`` command line.

Verdicts and estimates are emitted as JSON (floats at 17 significant
digits), never through exit codes: 0 = success, 2 = configuration error,
3 = convergence/resource error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .aerm import conf_of_region_aerm, confidence_set
from .config import (experiment_from_dict, generator_from_dict, load_json,
                     model_from_dict, region_from_dict, ucf_from_dict)
from .errors import AermError, ComputationError, ConfigurationError
from .experiments import run_experiment
from .jsonio import dumps, write_csv
from .plausibility import (TestConfig, bernstein_min_B, bootstrap_plausibility,
                           mc_plausibility, optimal_type1_bound,
                           test_level_first, test_tolerance_first)
from .sample import read_sample_csv
from .ucf import validity_tolerance


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.handler(args)
    except ConfigurationError as exc:
        print(f"aermctl: configuration error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"aermctl: {exc}", file=sys.stderr)
        return 3
    except AermError as exc:
        print(f"aermctl: {exc}", file=sys.stderr)
        return 2
    text = dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aermctl",
        description="Valid confidence sets and plausibility tests for "
                    "risk minimizers of machine-learning models.")
    parser.add_argument("--version", action="version", version=f"aermctl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("confset", help="build an almost-minimizer confidence set")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--sample", required=True, help="sample CSV file")
    p.add_argument("--ucf", required=True, help="uniform convergence bound JSON file")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--delta", type=float, default=None,
                   help="cover the delta-neighborhood of minimal risk instead "
                        "of the minimizer itself")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(handler=_cmd_confset)

    p = sub.add_parser("pl", help="estimate the plausibility of a region")
    plsub = p.add_subparsers(dest="method", required=True)
    for method in ("boot", "mc"):
        q = plsub.add_parser(method)
        q.add_argument("--model", required=True)
        q.add_argument("--region", required=True, help="region JSON file")
        group = q.add_mutually_exclusive_group(required=True)
        group.add_argument("--eps", type=float, help="tolerance used directly")
        group.add_argument("--alpha", type=float,
                           help="derive the tolerance from --ucf at this level")
        q.add_argument("--ucf", default=None)
        q.add_argument("--replicates", type=int, required=True)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--dump-replicates", default=None,
                       help="write per-replicate indicators to this CSV")
        q.add_argument("--out", default=None)
        if method == "boot":
            q.add_argument("--sample", required=True)
            q.set_defaults(handler=_cmd_pl_boot)
        else:
            q.add_argument("--generator", required=True, help="generator JSON file")
            q.set_defaults(handler=_cmd_pl_mc)

    p = sub.add_parser("test", help="test H0: the risk minimizer lies in the region")
    p.add_argument("--mode", choices=("level-first", "tolerance-first"), required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--sample", required=True)
    p.add_argument("--region", required=True)
    p.add_argument("--ucf", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_test)

    p = sub.add_parser("experiment", help="run a named experiment from a config file")
    p.add_argument("name", choices=("lasso-plaus-curve", "bernoulli-coverage",
                                    "quantile-demo"))
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("minb", help="Bernstein bound on the resample count")
    p.add_argument("--gamma", type=float, required=True)
    p.set_defaults(handler=_cmd_minb)

    p = sub.add_parser("bound", help="best guaranteed type-I error at fixed B")
    p.add_argument("--B", type=int, required=True)
    p.set_defaults(handler=_cmd_bound)
    return parser


def _cmd_confset(args) -> dict:
    model = model_from_dict(load_json(args.model))
    sample = read_sample_csv(args.sample)
    ucf = ucf_from_dict(load_json(args.ucf))
    aerm, report = confidence_set(model, sample, ucf, args.alpha, args.delta)
    out = report.to_dict()
    out["min_risk"] = aerm.min_risk
    out["theta_hat"] = list(aerm.theta_hat)
    return out


def _resolve_eps(args, m: int) -> float:
    if args.eps is not None:
        return args.eps
    if args.ucf is None:
        raise ConfigurationError("--alpha requires --ucf to derive the tolerance")
    ucf = ucf_from_dict(load_json(args.ucf))
    return validity_tolerance(ucf, m, args.alpha)


def _dump_replicates(path, indicators) -> None:
    write_csv(path, ["replicate", "indicator"],
              [(i, int(v)) for i, v in enumerate(indicators)])


def _cmd_pl_boot(args) -> dict:
    model = model_from_dict(load_json(args.model))
    sample = read_sample_csv(args.sample)
    region = region_from_dict(load_json(args.region))
    eps = _resolve_eps(args, sample.m)
    est, indicators = bootstrap_plausibility(
        model, sample, eps, region, args.replicates, args.seed,
        return_indicators=True)
    if args.dump_replicates:
        _dump_replicates(args.dump_replicates, indicators)
    return est.to_dict()


def _cmd_pl_mc(args) -> dict:
    model = model_from_dict(load_json(args.model))
    gen = generator_from_dict(load_json(args.generator), seed=args.seed)
    region = region_from_dict(load_json(args.region))
    eps = _resolve_eps(args, gen.m)
    est, indicators = mc_plausibility(gen, model, eps, region,
                                      args.replicates, args.seed,
                                      return_indicators=True)
    if args.dump_replicates:
        _dump_replicates(args.dump_replicates, indicators)
    return est.to_dict()


def _cmd_test(args) -> dict:
    model = model_from_dict(load_json(args.model))
    sample = read_sample_csv(args.sample)
    region = region_from_dict(load_json(args.region))
    ucf = ucf_from_dict(load_json(args.ucf))
    cfg = TestConfig(args.alpha, args.gamma, args.B, args.mode, region, ucf)
    if args.mode == "level-first":
        result = test_level_first(model, sample, cfg, args.seed)
    else:
        result = test_tolerance_first(model, sample, cfg, args.seed)
    return result.to_dict()


def _cmd_experiment(args):
    cfg = experiment_from_dict(load_json(args.config))
    if cfg.name != args.name:
        raise ConfigurationError(
            f"config names experiment {cfg.name!r}, command line says {args.name!r}")
    result = run_experiment(cfg, args.out)
    out = result.report()
    out["outdir"] = args.out
    # the report was already written into outdir; echo it on stdout too
    args.out = None
    return out


def _cmd_minb(args) -> dict:
    return {"gamma": args.gamma, "min_B": bernstein_min_B(args.gamma)}


def _cmd_bound(args) -> dict:
    alpha, gamma, bound = optimal_type1_bound(args.B)
    return {"B": args.B, "alpha": alpha, "gamma": gamma, "bound": bound,
            "threshold": 1.0 - alpha - gamma}


if __name__ == "__main__":
    sys.exit(main())
