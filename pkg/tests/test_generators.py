import numpy as np
import pytest

import aermkit as ak
from aermkit.errors import ConfigurationError
from aermkit.rngstreams import stream_rng


def test_bernoulli_minimizer_cases():
    model = ak.bernoulli_mode_model()
    assert ak.true_risk_minimizer(ak.BernoulliGenerator(0.3, 5), model)[0] == 0.0
    assert ak.true_risk_minimizer(ak.BernoulliGenerator(0.8, 5), model)[0] == 1.0
    both = ak.true_risk_minimizer(ak.BernoulliGenerator(0.5, 5), model)
    assert isinstance(both, list)
    assert {float(t[0]) for t in both} == {0.0, 1.0}


def test_lasso_minimizer_inside_ball():
    gen = ak.LassoLinearGenerator(np.array([0.4, -0.2]), 10)
    model = ak.l1_linear_model(10.0, 2)
    np.testing.assert_array_equal(
        ak.true_risk_minimizer(gen, model), [0.4, -0.2])


def test_lasso_minimizer_projected_when_outside():
    gen = ak.LassoLinearGenerator(np.array([2.0, 2.0]), 10)
    model = ak.l1_linear_model(1.0, 2)
    got = ak.true_risk_minimizer(gen, model)
    np.testing.assert_allclose(got, [0.5, 0.5], atol=1e-12)


def test_quantile_minimizer():
    gen = ak.LabeledDistributionGenerator(ak.UniformLaw(0.0, 1.0), 9)
    model = ak.constant_quantile_model(0.25, 0.0, 1.0)
    assert ak.true_risk_minimizer(gen, model)[0] == pytest.approx(0.25)


def test_incompatible_pair_raises():
    gen = ak.BernoulliGenerator(0.3, 5)
    with pytest.raises(ConfigurationError):
        ak.true_risk_minimizer(gen, ak.l1_linear_model(1.0, 2))


def test_draws_have_declared_shape():
    rng = stream_rng(1, 0)
    s = ak.LassoLinearGenerator(np.array([1.0, 0.0, 0.0]), 17).draw(rng)
    assert s.m == 17 and s.p == 3
    s2 = ak.BernoulliGenerator(0.2, 8).draw(rng)
    assert s2.m == 8 and s2.p == 0
    assert set(np.unique(s2.labels)) <= {0.0, 1.0}


def test_pinball_score_variance_numeric():
    # uniform(0,1), tau=0.5, theta=0: g = Y/2, var = 1/48
    v = ak.pinball_score_variance(ak.UniformLaw(0.0, 1.0), 0.0, 0.5)
    assert v == pytest.approx(1.0 / 48.0, rel=1e-6)
    assert ak.pinball_score_variance(ak.PointMassLaw(2.0), 1.0, 0.5) == 0.0


def test_quantile_v_sup_uniform():
    # extremes of the variance profile sit at the interval ends (1/48 each)
    v = ak.quantile_v_sup(ak.UniformLaw(0.0, 1.0), 0.5, 0.0, 1.0)
    assert v == pytest.approx(1.0 / 48.0, rel=1e-4)


def test_v_sup_scale_doubles_required_m():
    v = 0.0123
    m1 = ak.required_m(ak.QuantileVarianceUcf(0.5, v), 0.07, 0.05)
    m2 = ak.required_m(ak.QuantileVarianceUcf(0.5, 2 * v), 0.07, 0.05)
    assert m2 == pytest.approx(2 * m1, abs=1)
