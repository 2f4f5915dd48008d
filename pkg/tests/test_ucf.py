"""Uniform convergence bound catalog: frozen values, oracles, monotonicity."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import aermkit as ak
from aermkit.errors import ResourceError

ALL_KINDS = [
    ak.BernoulliExactUcf(),
    ak.ChebyshevUcf(1.0),
    ak.SubexponentialUcf(1.0),
    ak.QuantileVarianceUcf(0.5, 0.8),
    ak.LassoExponentialUcf(4.34),
    ak.RademacherUcf(1.0, 1.0, 100.0),
]


# -- frozen closed-form values (high-precision evaluations) -------------------

def test_required_m_chebyshev():
    assert ak.required_m(ak.ChebyshevUcf(1.0), 0.1, 0.05) == 2000


def test_required_m_subexponential():
    # 6400 * ln(40) = 23608.8285...; the squared branch binds at eps=0.1
    assert ak.required_m(ak.SubexponentialUcf(1.0), 0.1, 0.05) == 23609
    s2, eps = 1.0, 0.1
    sq = 64 * s2 ** 2 / eps ** 2
    lin = 8 * s2 / eps
    assert sq > lin  # verify which exponent binds


def test_subexponential_branch_crossover():
    # above eps = 8*sigma2 the linear exponent binds
    s2 = 0.1
    eps = 1.0   # > 8*s2 = 0.8
    expect = np.ceil(8 * s2 / eps * np.log(2 / 0.05))
    assert ak.required_m(ak.SubexponentialUcf(s2), eps, 0.05) == int(expect)


def test_coverage_tolerance_chebyshev_inverse():
    assert ak.coverage_tolerance(ak.ChebyshevUcf(1.0), 2000, 0.05) \
        == pytest.approx(0.1)


def test_coverage_tolerance_lasso():
    got = ak.coverage_tolerance(ak.LassoExponentialUcf(4.34), 1000, 0.05)
    assert got == pytest.approx(0.55585806276726766, rel=1e-12)


def test_coverage_tolerance_rademacher():
    got = ak.coverage_tolerance(ak.RademacherUcf(1.0, 1.0, 100.0), 100, 0.05)
    assert got == pytest.approx(1.6881243123804790, rel=1e-12)


def test_validity_tolerance_chebyshev():
    assert ak.validity_tolerance(ak.ChebyshevUcf(1.0), 2000, 0.05) \
        == pytest.approx(0.2)


def test_validity_tolerance_lasso_doubles_coverage():
    v = ak.validity_tolerance(ak.LassoExponentialUcf(4.34), 1000, 0.05)
    assert v == pytest.approx(2 * 0.55585806276726766, rel=1e-12)


def test_validity_tolerance_subexponential_matches_closed_form():
    for m, alpha in [(100, 0.05), (23609, 0.05), (3, 0.2), (5000, 0.01)]:
        got = ak.validity_tolerance(ak.SubexponentialUcf(1.0), m, alpha)
        want = 2 * ak.coverage_tolerance(ak.SubexponentialUcf(1.0), m, alpha)
        assert got == pytest.approx(want, rel=1e-9)


def test_chebyshev_quadrupling_m_halves_tolerance():
    t1 = ak.validity_tolerance(ak.ChebyshevUcf(1.0), 500, 0.05)
    t2 = ak.validity_tolerance(ak.ChebyshevUcf(1.0), 2000, 0.05)
    assert t2 == pytest.approx(t1 / 2)


def test_tiny_eps_overflows_to_resource_error():
    with pytest.raises(ResourceError):
        ak.required_m(ak.ChebyshevUcf(1.0), 1e-200, 0.05)


# -- exact binomial coverage ---------------------------------------------------

def enumeration_coverage(m, eps, p):
    """2^m enumeration oracle for P[|mean - p| <= eps]."""
    total = 0.0
    for bits in itertools.product((0, 1), repeat=m):
        k = sum(bits)
        if abs(k / m - p) <= eps + 1e-15:
            total += p ** k * (1 - p) ** (m - k)
    return total


@pytest.mark.parametrize("m,eps,p", [
    (3, 0.4, 0.5), (1, 0.2, 0.5), (5, 0.15, 0.3), (7, 0.25, 0.61),
    (9, 0.1, 0.5), (12, 0.2, 0.08), (12, 0.33, 0.97),
])
def test_coverage_at_matches_enumeration(m, eps, p):
    got = float(ak.bernoulli_coverage_at(m, eps, p)[0])
    assert got == pytest.approx(enumeration_coverage(m, eps, p), abs=1e-12)


def test_coverage_at_examples():
    assert float(ak.bernoulli_coverage_at(3, 0.4, 0.5)[0]) == pytest.approx(0.75)
    assert float(ak.bernoulli_coverage_at(1, 0.2, 0.5)[0]) == 0.0


def test_worst_coverage_eps_one_is_full():
    assert ak.bernoulli_exact_worst_coverage(6, 1.0) == 1.0


def test_worst_coverage_below_pointwise():
    for m, eps in [(3, 0.4), (8, 0.2), (12, 0.12)]:
        wc = ak.bernoulli_exact_worst_coverage(m, eps)
        for p in np.linspace(0, 1, 401):
            assert wc <= enumeration_coverage(m, eps, p) + 1e-10


def test_worst_coverage_matches_enumeration_scan():
    # the infimum from the production grid should match a fine enumeration scan
    for m, eps in [(4, 0.3), (6, 0.22), (10, 0.17)]:
        scan = min(enumeration_coverage(m, eps, p)
                   for p in np.linspace(0.0, 1.0, 4001))
        got = ak.bernoulli_exact_worst_coverage(m, eps)
        assert got <= scan + 1e-9


def test_required_m_bernoulli_exact_first_crossing():
    eps, alpha = 0.3, 0.1
    m_star = ak.required_m(ak.BernoulliExactUcf(), eps, alpha)
    # oracle: exhaustive scan over m <= 20 using the enumeration coverage
    def worst(m):
        return min(enumeration_coverage(m, eps, p)
                   for p in np.linspace(0.0, 1.0, 2001))
    assert m_star <= 20
    oracle = next(m for m in range(1, 21)
                  if worst(m) >= 1 - alpha and (m == 1 or worst(m - 1) < 1 - alpha))
    assert m_star == oracle
    assert ak.bernoulli_exact_worst_coverage(m_star, eps) >= 1 - alpha
    assert ak.bernoulli_exact_worst_coverage(m_star - 1, eps) < 1 - alpha


# -- ordering properties across the catalog ------------------------------------

@pytest.mark.parametrize("ucf", ALL_KINDS, ids=lambda u: u.kind)
def test_required_m_nonincreasing_in_eps(ucf):
    rng = np.random.default_rng(5)
    for _ in range(12):
        e1, e2 = sorted(rng.uniform(0.05, 0.9, 2))
        alpha = rng.uniform(0.01, 0.5)
        if e1 == e2:
            continue
        assert ak.required_m(ucf, e1, alpha) >= ak.required_m(ucf, e2, alpha)


@pytest.mark.parametrize("ucf", ALL_KINDS, ids=lambda u: u.kind)
def test_required_m_nonincreasing_in_alpha(ucf):
    rng = np.random.default_rng(6)
    for _ in range(12):
        a1, a2 = sorted(rng.uniform(0.01, 0.6, 2))
        eps = rng.uniform(0.05, 0.9)
        if a1 == a2:
            continue
        assert ak.required_m(ucf, eps, a1) >= ak.required_m(ucf, eps, a2)


@pytest.mark.parametrize("ucf", ALL_KINDS, ids=lambda u: u.kind)
def test_required_m_and_coverage_tolerance_consistent(ucf):
    rng = np.random.default_rng(7)
    for _ in range(8):
        eps = rng.uniform(0.08, 0.9)
        alpha = rng.uniform(0.02, 0.5)
        m = ak.required_m(ucf, eps, alpha)
        slack = 1e-3 if isinstance(ucf, ak.BernoulliExactUcf) else 1e-9
        assert ak.coverage_tolerance(ucf, m, alpha) <= eps + slack


@pytest.mark.parametrize("ucf", ALL_KINDS, ids=lambda u: u.kind)
def test_validity_ge_coverage(ucf):
    for m in (3, 40, 700):
        for alpha in (0.01, 0.1, 0.4):
            assert ak.validity_tolerance(ucf, m, alpha) \
                >= ak.coverage_tolerance(ucf, m, alpha)


@given(st.integers(1, 40), st.floats(0.02, 0.95))
@settings(max_examples=60, deadline=None)
def test_worst_coverage_monotone_in_eps(m, eps):
    wider = ak.bernoulli_exact_worst_coverage(m, min(eps * 1.5, 1.0))
    assert wider >= ak.bernoulli_exact_worst_coverage(m, eps) - 1e-12
