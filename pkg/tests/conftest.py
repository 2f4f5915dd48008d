import itertools

import numpy as np
import pytest

import aermkit as ak


@pytest.fixture
def mode_model():
    return ak.bernoulli_mode_model()


@pytest.fixture
def sample_011():
    return ak.LabeledSample.from_labels([0.0, 1.0, 1.0])


def exhaustive_bootstrap_plausibility(model, sample, eps, region):
    """Exact bootstrapped plausibility by enumerating all m^m resamples.

    Independent oracle: walks index tuples and re-computes each resample's
    almost-minimizer decision from scratch through the public risk API.
    """
    m = sample.m
    labels = sample.labels
    examples = sample.examples
    hits = 0
    total = 0
    for idx in itertools.product(range(m), repeat=m):
        idx = list(idx)
        resample = ak.LabeledSample(examples[idx], labels[idx])
        theta, min_risk = ak.erm_solve(model, resample)
        lo = ak.region_min_empirical_risk(model, resample, region)
        hits += lo <= min_risk + eps + 1e-9
        total += 1
    return hits / total


def dense_grid_min_max(model, sample, lo, hi, n=20001):
    """1-D dense-grid oracle for the extreme empirical risks of l1-linear."""
    grid = np.linspace(lo, hi, n)
    risks = [ak.empirical_risk(model, sample, [g]) for g in grid]
    return min(risks), max(risks)
