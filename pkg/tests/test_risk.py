"""Empirical risk, constrained ERM, and region extrema."""

import numpy as np
import pytest

import aermkit as ak
from aermkit.errors import (ConfigurationError, DomainError, EmptyRegionError,
                            UnsupportedOperationError)
from conftest import dense_grid_min_max

TOL = 1e-9


# -- empirical_risk -----------------------------------------------------------

def test_zero_one_risk(mode_model, sample_011):
    assert ak.empirical_risk(mode_model, sample_011, [0.0]) == pytest.approx(2 / 3)
    assert ak.empirical_risk(mode_model, sample_011, [1.0]) == pytest.approx(1 / 3)


def test_squared_risk_exact_fit():
    model = ak.l1_linear_model(10.0, 1)
    s = ak.LabeledSample([[1.0], [2.0]], [1.0, 2.0])
    assert ak.empirical_risk(model, s, [1.0]) == 0.0


def test_pinball_risk_hand_evaluated():
    # per-point pinball loss (y - theta)(tau - 1{y < theta}), averaged:
    # y=0: (0-2)(0.5-1) = 1;  y=4: (4-2)(0.5-0) = 1  -> mean 1.0
    model = ak.constant_quantile_model(0.5, 0.0, 4.0)
    s = ak.LabeledSample.from_labels([0.0, 4.0])
    assert ak.empirical_risk(model, s, [2.0]) == pytest.approx(1.0)


def test_theta_outside_space_is_domain_error(mode_model, sample_011):
    with pytest.raises(DomainError):
        ak.empirical_risk(mode_model, sample_011, [0.25])
    model = ak.l1_linear_model(1.0, 2)
    s = ak.LabeledSample([[1.0, 0.0]], [1.0])
    with pytest.raises(DomainError):
        ak.empirical_risk(model, s, [0.9, 0.9])


def test_family_sample_mismatch(mode_model):
    featureful = ak.LabeledSample([[1.0]], [0.0])
    with pytest.raises(ConfigurationError):
        ak.empirical_risk(mode_model, featureful, [0.0])


def test_loss_family_pairing_enforced():
    with pytest.raises(ConfigurationError):
        ak.ModelSpec("bernoulli-mode", ak.Loss("squared"),
                     ak.FiniteSpace((np.array([0.0]),)))
    with pytest.raises(ConfigurationError):
        ak.Loss("pinball", tau=1.5)


# -- erm_solve ----------------------------------------------------------------

def test_erm_mode(mode_model, sample_011):
    theta, risk = ak.erm_solve(mode_model, sample_011)
    assert theta[0] == 1.0 and risk == pytest.approx(1 / 3)


def test_erm_mode_tie_breaks_to_zero(mode_model):
    s = ak.LabeledSample.from_labels([0.0, 1.0])
    theta, _ = ak.erm_solve(mode_model, s)
    assert theta[0] == 0.0


def test_erm_quantile_matches_grid_oracle():
    model = ak.constant_quantile_model(0.5, 1.0, 3.0)
    s = ak.LabeledSample.from_labels([1.0, 2.0, 3.0])
    theta, risk = ak.erm_solve(model, s)
    grid = np.linspace(1.0, 3.0, 40001)
    risks = [ak.empirical_risk(model, s, [g]) for g in grid]
    assert risk <= min(risks) + 1e-8
    assert theta[0] == pytest.approx(2.0)
    assert risk == pytest.approx(1 / 3)


def test_erm_quantile_even_m_lower_quantile():
    model = ak.constant_quantile_model(0.5, 0.0, 10.0)
    s = ak.LabeledSample.from_labels([2.0, 8.0])
    theta, _ = ak.erm_solve(model, s)
    assert theta[0] == 2.0


def test_erm_l1_interpolating_fit():
    model = ak.l1_linear_model(10.0, 1)
    s = ak.LabeledSample([[1.0], [1.0]], [3.0, 3.0])
    theta, risk = ak.erm_solve(model, s)
    assert theta[0] == pytest.approx(3.0) and risk == pytest.approx(0.0, abs=1e-12)


def test_erm_beats_random_feasible_points():
    rng = np.random.default_rng(0)
    model = ak.l1_linear_model(2.0, 3)
    X = rng.normal(size=(40, 3))
    y = X @ np.array([1.5, -1.0, 0.2]) + 0.1 * rng.normal(size=40)
    s = ak.LabeledSample(X, y)
    _, best = ak.erm_solve(model, s)
    for _ in range(1000):
        v = rng.normal(size=3)
        v = v / np.abs(v).sum() * rng.uniform(0, 2.0)
        assert best <= ak.empirical_risk(model, s, v) + TOL


# -- region extrema -----------------------------------------------------------

def test_region_single_point_degenerate(mode_model, sample_011):
    region = ak.FiniteRegion((np.array([0.0]),))
    assert ak.region_min_empirical_risk(mode_model, sample_011, region) \
        == pytest.approx(2 / 3)
    assert ak.region_max_empirical_risk(mode_model, sample_011, region) \
        == pytest.approx(2 / 3)


def test_region_two_points_max(mode_model, sample_011):
    region = ak.FiniteRegion((np.array([0.0]), np.array([1.0])))
    assert ak.region_max_empirical_risk(mode_model, sample_011, region) \
        == pytest.approx(2 / 3)


def test_region_ball_zero_radius_is_mean_square():
    model = ak.l1_linear_model(10.0, 1)
    s = ak.LabeledSample([[1.0], [-1.0]], [1.0, -1.0])
    assert ak.region_min_empirical_risk(model, s, ak.L1BallRegion(0.0)) \
        == pytest.approx(float(np.mean(s.labels ** 2)))


def test_region_ball_min_max_match_grid_oracle():
    model = ak.l1_linear_model(10.0, 1)
    s = ak.LabeledSample([[1.0], [-1.0]], [1.0, -1.0])
    lo_o, hi_o = dense_grid_min_max(model, s, -0.5, 0.5)
    region = ak.L1BallRegion(0.5)
    assert ak.region_min_empirical_risk(model, s, region) == pytest.approx(lo_o, abs=1e-6)
    assert ak.region_max_empirical_risk(model, s, region) == pytest.approx(hi_o, abs=1e-6)
    assert lo_o == pytest.approx(0.25, abs=1e-6)
    assert hi_o == pytest.approx(2.25, abs=1e-6)


def test_region_min_le_max_and_full_space_matches_erm():
    rng = np.random.default_rng(3)
    model = ak.l1_linear_model(2.5, 2)
    s = ak.LabeledSample(rng.uniform(-1, 1, (30, 2)),
                         rng.uniform(-1, 1, 30))
    _, best = ak.erm_solve(model, s)
    full = ak.L1BallRegion(2.5)
    lo = ak.region_min_empirical_risk(model, s, full)
    hi = ak.region_max_empirical_risk(model, s, full)
    assert lo <= hi
    assert lo == pytest.approx(best, abs=1e-7)


@pytest.mark.parametrize("p_dim", [1, 2])
def test_l1_solver_vs_dense_grid_2d(p_dim):
    rng = np.random.default_rng(7 + p_dim)
    model = ak.l1_linear_model(1.0, p_dim)
    X = rng.uniform(-1, 1, (50, p_dim))
    y = X @ rng.uniform(-2, 2, p_dim) + 0.3 * rng.normal(size=50)
    s = ak.LabeledSample(X, y)
    region = ak.L1BallRegion(0.7)
    if p_dim == 1:
        grid = np.linspace(-0.7, 0.7, 30001)[:, None]
    else:
        u = np.linspace(-0.7, 0.7, 401)
        g1, g2 = np.meshgrid(u, u)
        grid = np.c_[g1.ravel(), g2.ravel()]
        grid = grid[np.abs(grid).sum(axis=1) <= 0.7 + 1e-12]
        edge = np.linspace(0, 0.7, 2001)
        for sx in (-1, 1):
            for sy in (-1, 1):
                grid = np.r_[grid, np.c_[sx * edge, sy * (0.7 - edge)]]
    risks = np.array([ak.empirical_risk(model, s, g) for g in grid])
    assert ak.region_min_empirical_risk(model, s, region) \
        <= risks.min() + 1e-6
    assert ak.region_max_empirical_risk(model, s, region) \
        >= risks.max() - 1e-6


def test_quantile_region_complement_and_union():
    model = ak.constant_quantile_model(0.5, 0.0, 10.0)
    s = ak.LabeledSample.from_labels([2.0, 4.0, 6.0])
    inner = ak.BoxRegion([3.0], [5.0])
    comp = ak.ComplementRegion(inner)
    grid = np.linspace(0.0, 10.0, 20001)
    risks = np.array([ak.empirical_risk(model, s, [g]) for g in grid])
    outside = (grid <= 3.0) | (grid >= 5.0)
    assert ak.region_min_empirical_risk(model, s, comp) \
        == pytest.approx(risks[outside].min(), abs=1e-4)
    both = ak.UnionRegion((ak.BoxRegion([0.0], [1.0]), ak.BoxRegion([5.5], [7.0])))
    inside = (grid <= 1.0) | ((grid >= 5.5) & (grid <= 7.0))
    assert ak.region_min_empirical_risk(model, s, both) \
        == pytest.approx(risks[inside].min(), abs=1e-4)
    assert ak.region_max_empirical_risk(model, s, both) \
        == pytest.approx(risks[inside].max(), abs=1e-4)


def test_empty_region_raises(mode_model, sample_011):
    region = ak.FiniteRegion((np.array([0.5]),))   # not a space point
    with pytest.raises(EmptyRegionError):
        ak.region_min_empirical_risk(mode_model, sample_011, region)


def test_unsupported_region_for_l1():
    model = ak.l1_linear_model(1.0, 2)
    s = ak.LabeledSample([[1.0, 0.0]], [1.0])
    with pytest.raises(UnsupportedOperationError):
        ak.region_min_empirical_risk(model, s, ak.BoxRegion([0, 0], [1, 1]))
    with pytest.raises(UnsupportedOperationError):
        ak.region_max_empirical_risk(
            model, s, ak.ComplementRegion(ak.L1BallRegion(0.5)))


def test_risks_nonnegative_and_zero_one_bounded(mode_model):
    rng = np.random.default_rng(11)
    s = ak.LabeledSample.from_labels(rng.integers(0, 2, 25).astype(float))
    for theta in ([0.0], [1.0]):
        r = ak.empirical_risk(mode_model, s, theta)
        assert 0.0 <= r <= 1.0
