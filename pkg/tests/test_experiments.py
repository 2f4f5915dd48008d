"""Experiment harness: reproducibility, monotonicity, desk-scale behavior."""

import os

import numpy as np
import pytest

import aermkit as ak
from aermkit.config import experiment_from_dict
from aermkit.experiments import (ExperimentConfig, draw_beta0, run_experiment)


def small_lasso_cfg(seed=3, replicates=60):
    beta0 = draw_beta0(seed, 10)
    return ExperimentConfig(
        name="lasso-plaus-curve",
        generator=ak.LassoLinearGenerator(beta0, 400),
        alpha=0.05, replicates=replicates, seed=seed,
        grid=(0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0))


def small_coverage_cfg(seed=5, trials=12):
    return ExperimentConfig(
        name="bernoulli-coverage",
        generator=ak.BernoulliGenerator(0.3, 1),
        alpha=0.1, gamma=0.05, trials=trials, seed=seed,
        grid=(20, 60), B=50)


def test_lasso_curve_monotone_and_one_at_radius():
    res = ak.run_lasso_plaus_curve(small_lasso_cfg())
    values = [r[1] for r in res.rows]
    assert values == sorted(values)           # exact on shared replicates
    assert res.rows[-1][0] == 10.0 and res.rows[-1][1] == 1.0


def test_lasso_curve_low_end_near_zero():
    res = ak.run_lasso_plaus_curve(small_lasso_cfg())
    assert res.rows[0][1] <= 0.05


def test_lasso_crossing_is_first_grid_hit():
    res = ak.run_lasso_plaus_curve(small_lasso_cfg())
    first = next(t for t, p, _ in res.rows if p >= 0.95)
    assert res.crossing == first


def test_coverage_rows_and_m_star():
    res = ak.run_bernoulli_coverage(small_coverage_cfg())
    assert res.m_star == ak.required_m(ak.BernoulliExactUcf(), 0.2, 0.05)
    assert [m for m, _, _ in res.rows] == [20, 60]
    for _, eps, freq in res.rows:
        assert eps > 0 and 0.0 <= freq <= 1.0


def test_quantile_demo_covers():
    cfg = ExperimentConfig(
        name="quantile-demo",
        generator=ak.LabeledDistributionGenerator(ak.UniformLaw(0.0, 1.0), 150),
        alpha=0.05, trials=60, seed=2)
    res = ak.run_quantile_demo(cfg)
    assert res.true_quantile == pytest.approx(0.5)
    assert res.coverage >= 0.95
    assert res.v_sup == pytest.approx(1 / 48, rel=1e-3)


def test_quantile_demo_point_mass_always_covers():
    cfg = ExperimentConfig(
        name="quantile-demo",
        generator=ak.LabeledDistributionGenerator(ak.PointMassLaw(0.7), 25),
        alpha=0.05, trials=30, seed=8)
    res = ak.run_quantile_demo(cfg)
    assert res.coverage == 1.0


def test_csv_outputs_byte_identical(tmp_path):
    cfg = small_lasso_cfg(replicates=30)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    run_experiment(cfg, str(out1))
    run_experiment(cfg, str(out2))
    csv1 = (out1 / "lasso-plaus-curve.csv").read_bytes()
    csv2 = (out2 / "lasso-plaus-curve.csv").read_bytes()
    assert csv1 == csv2
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()


def test_csv_identical_across_thread_counts(tmp_path):
    cfg = small_coverage_cfg(trials=8)
    blobs = []
    for threads in ("1", "4"):
        os.environ["AERM_THREADS"] = threads
        try:
            out = tmp_path / f"t{threads}"
            run_experiment(cfg, str(out))
            blobs.append((out / "bernoulli-coverage.csv").read_bytes())
        finally:
            os.environ.pop("AERM_THREADS", None)
    assert blobs[0] == blobs[1]


def test_different_seeds_differ(tmp_path):
    r1 = ak.run_lasso_plaus_curve(small_lasso_cfg(seed=3, replicates=40))
    r2 = ak.run_lasso_plaus_curve(small_lasso_cfg(seed=4, replicates=40))
    assert r1.rows != r2.rows


def test_experiment_config_from_json_dict():
    cfg = experiment_from_dict({
        "name": "lasso-plaus-curve",
        "generator": {"kind": "lasso-linear", "p_dim": 10, "beta0": "random",
                      "m": 1000},
        "alpha": 0.05,
        "replicates": 100,
        "seed": 117,
    })
    assert cfg.generator.p_dim == 10
    np.testing.assert_array_equal(cfg.generator.beta0, draw_beta0(117, 10))
    assert cfg.replicates == 100


def test_experiment_config_rejects_unknown_name():
    with pytest.raises(ak.ConfigurationError):
        ExperimentConfig(name="nope", generator=ak.BernoulliGenerator(0.5, 1))


def test_coverage_requires_p_below_half():
    cfg = ExperimentConfig(name="bernoulli-coverage",
                           generator=ak.BernoulliGenerator(0.6, 1),
                           gamma=0.025)
    with pytest.raises(ak.ConfigurationError):
        ak.run_bernoulli_coverage(cfg)
