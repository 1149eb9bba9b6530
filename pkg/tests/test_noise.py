"""Unit tests for the spectral noise synthesis."""
import numpy as np
import pytest

from stochwave import kernels as K
from stochwave import noise as N


def test_increment_is_deterministic_per_seed():
    grid = N.GridSpec(dim=2, n=32, length=4.0, dt=0.05)
    spec = K.riesz(2, 1.0)
    a = N.sample_increment(grid, spec, seed=11, path=3, step=7)
    b = N.sample_increment(grid, spec, seed=11, path=3, step=7)
    assert np.array_equal(a, b)
    c = N.sample_increment(grid, spec, seed=11, path=3, step=8)
    d = N.sample_increment(grid, spec, seed=11, path=4, step=7)
    e = N.sample_increment(grid, spec, seed=12, path=3, step=7)
    for other in (c, d, e):
        assert not np.array_equal(a, other)


def test_white_noise_variance():
    grid = N.GridSpec(dim=1, n=128, length=8.0, dt=0.02)
    samples = np.stack([N.sample_white(grid, seed=0, step=s)
                        for s in range(4000)])
    var = samples.var()
    target = grid.dt / grid.h
    se = target * np.sqrt(2.0 / samples.size)
    assert abs(var - target) < 5 * se
    assert abs(samples.mean()) < 5 * np.sqrt(target / samples.size)


def test_covariance_model_symmetric_and_positive_variance():
    grid = N.GridSpec(dim=2, n=32, length=4.0, dt=0.1)
    spec = K.riesz(2, 0.8)
    C = N.covariance_model(grid, spec)
    assert C[0, 0] > 0
    assert np.allclose(C, np.roll(np.flip(C, axis=(0, 1)), 1, axis=(0, 1)),
                       rtol=1e-10)   # C(-x) = C(x) on the torus


def test_empirical_covariance_matches_model():
    grid = N.GridSpec(dim=1, n=64, length=8.0, dt=0.05)
    spec = K.fractional(0.75)
    C = N.covariance_model(grid, spec)
    m = 4000
    samples = np.stack([N.sample_increment(grid, spec, seed=5, step=s)
                        for s in range(m)])
    for lag in (0, 1, 2, 5, 11):
        prods = samples * np.roll(samples, -lag, axis=1)
        est = prods.mean()
        se = prods.std() / np.sqrt(prods.size / grid.n)  # columns correlated
        assert abs(est - C[lag]) < 4 * se + 1e-12


def test_mode_weights_finite_at_zero_mode():
    grid = N.GridSpec(dim=2, n=16, length=4.0, dt=0.1)
    for spec in (K.riesz(2, 1.0), K.fractional(0.8, 0.6)):
        g = N.mode_weights(grid, spec)
        assert np.all(np.isfinite(g))
        assert g[0, 0] > 0


def test_mode_weights_match_spectral_density_off_zero():
    grid = N.GridSpec(dim=2, n=16, length=4.0, dt=0.1)
    spec = K.riesz(2, 1.0)
    g = N.mode_weights(grid, spec)
    k = grid.wavenumbers()
    z = np.array([k[3], k[5]])
    assert g[3, 5] == pytest.approx(K.spectral_density(spec, z), rel=1e-10)


def test_dimension_mismatch_rejected():
    grid = N.GridSpec(dim=1, n=16, length=4.0, dt=0.1)
    with pytest.raises(ValueError):
        N.mode_weights(grid, K.riesz(2, 1.0))


def test_grid_validation():
    with pytest.raises(ValueError):
        N.GridSpec(dim=4, n=16, length=4.0, dt=0.1)
    with pytest.raises(ValueError):
        N.GridSpec(dim=1, n=0, length=4.0, dt=0.1)
