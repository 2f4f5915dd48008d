"""Compiled and NumPy kernel backends agree."""

import numpy as np
import pytest

from aermkit import kernels
from aermkit.kernels import _ref

_core = pytest.importorskip("aermkit.kernels._core",
                            reason="compiled backend not built")


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("n", [1, 2, 7, 64])
def test_l1_project_parity(n):
    rng = np.random.default_rng(n)
    for _ in range(50):
        v = rng.normal(size=n) * rng.uniform(0.1, 10)
        radius = rng.uniform(0.05, 5.0)
        np.testing.assert_allclose(_core.l1_project(v, radius),
                                   _ref.l1_project(v, radius), atol=1e-12)


def test_l1_project_readonly_input():
    v = np.array([3.0, -1.0])
    v.setflags(write=False)
    np.testing.assert_allclose(_core.l1_project(v, 1.0),
                               _ref.l1_project(v, 1.0))


def test_quadratic_min_parity():
    rng = np.random.default_rng(1)
    for _ in range(30):
        p = rng.integers(1, 8)
        G = rng.normal(size=(3 * p, p))
        A = np.ascontiguousarray(G.T @ G / (3 * p))
        b = np.ascontiguousarray(rng.normal(size=p))
        c0 = float(rng.uniform(0, 3))
        radius = float(rng.uniform(0.1, 2.0))
        step = 1.0 / (2 * np.linalg.eigvalsh(A)[-1])
        x0 = np.zeros(p)
        xc, fc, _, okc = _core.l1_quadratic_min(A, b, c0, radius, x0, step,
                                                10000, 1e-12)
        xr, fr, _, okr = _ref.l1_quadratic_min(A, b, c0, radius, x0, step,
                                               10000, 1e-12)
        assert okc and okr
        assert fc == pytest.approx(fr, abs=1e-8)
        assert np.abs(xc).sum() <= radius + 1e-10
        assert np.abs(xr).sum() <= radius + 1e-10


def test_pinball_parity():
    rng = np.random.default_rng(2)
    y = np.sort(rng.normal(size=200))
    w = rng.multinomial(200, np.full(200, 1 / 200)).astype(float)
    thetas = rng.uniform(-3, 3, 25)
    for tau in (0.1, 0.5, 0.9):
        np.testing.assert_allclose(
            _core.pinball_risk(y, w, thetas, tau, 200.0),
            _ref.pinball_risk(y, w, thetas, tau, 200.0), atol=1e-12)


def test_binom_coverage_parity():
    rng = np.random.default_rng(3)
    for m in (1, 3, 17, 400):
        p = rng.uniform(0, 1, 200)
        for eps in (0.01, 0.2, 0.7):
            np.testing.assert_allclose(
                _core.binom_window_coverage(m, eps, p),
                _ref.binom_window_coverage(m, eps, p), atol=1e-12)


def test_binom_coverage_endpoints():
    p = np.array([0.0, 1.0])
    np.testing.assert_allclose(_core.binom_window_coverage(5, 0.3, p),
                               _ref.binom_window_coverage(5, 0.3, p))
    assert _core.binom_window_coverage(5, 0.3, np.array([0.0]))[0] == 1.0
