"""Unit tests for the Monte Carlo statistics layer.

The Holder estimator is validated against synthetic fractional Brownian
motion generated by circulant embedding, an oracle independent of the wave
solver.
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochwave import model as M
from stochwave import stats as ST


def synth_fbm(H, n, paths, seed=0):
    """Fractional Brownian motion on [0,1] via circulant embedding of the
    fGn covariance (exact in law)."""
    k = np.arange(n + 1)
    g = 0.5 * (np.abs(k + 1) ** (2 * H) - 2 * np.abs(k) ** (2 * H)
               + np.abs(k - 1) ** (2 * H)) / n ** (2 * H)
    row = np.concatenate([g, g[-2:0:-1]])
    lam = np.fft.fft(row).real
    lam = np.maximum(lam, 0.0)
    m = row.size
    rng = np.random.Generator(np.random.Philox(key=seed))
    z = rng.standard_normal((paths, m)) + 1j * rng.standard_normal((paths, m))
    incs = np.real(np.fft.fft(np.sqrt(lam / (2 * m)) * z, axis=1))[:, :n]
    paths = np.cumsum(incs, axis=1)
    # bridge out the endpoint so the periodic-shift structure function sees
    # no O(1) wrap-around jump (the smooth linear part cannot affect the
    # small-lag exponent)
    t = np.arange(n) / n
    return paths - paths[:, -1:] * t


@pytest.mark.parametrize("H", [0.3, 0.5, 0.7])
def test_holder_estimator_recovers_fbm_exponent(H):
    paths = synth_fbm(H, 4096, 200, seed=3)
    fit = ST.estimate_holder(paths, 1.0 / 4096, [4, 8, 16, 32], H)
    assert abs(fit.exponent - H) < 0.05


def test_structure_function_smooth_periodic_field():
    # for u = sin(2 pi x) the exact second-order structure function is
    # 2 sin^2(pi r), so the small-lag log-log slope is 2
    n = 256
    x = np.linspace(0, 1, n, endpoint=False)
    fields = np.tile(np.sin(2 * np.pi * x), (3, 1))
    r, s = ST.structure_function(fields, 1.0 / n, [1, 2, 4, 8])
    assert np.allclose(s, 2 * np.sin(np.pi * r) ** 2, rtol=1e-10)
    slope, _ = ST.fit_power_law(r, s)
    assert slope == pytest.approx(2.0, abs=0.05)


def test_fit_power_law_exact():
    r = np.array([1.0, 2.0, 4.0, 8.0])
    s = 3.0 * r ** 1.7
    slope, resid = ST.fit_power_law(r, s)
    assert slope == pytest.approx(1.7, rel=1e-12)
    assert resid < 1e-12


@settings(max_examples=40, deadline=None)
@given(c=st.floats(0.01, 100.0), a=st.floats(0.001, 100.0),
       p=st.floats(0.2, 3.0))
def test_fit_power_law_rescaling_invariance(c, a, p):
    # rescaling r -> c r and s -> a s must not move the fitted exponent
    r = np.array([1.0, 2.0, 4.0, 8.0, 16.0])
    s = r ** p
    base, _ = ST.fit_power_law(r, s)
    scaled, _ = ST.fit_power_law(c * r, a * s)
    assert scaled == pytest.approx(base, rel=1e-9, abs=1e-9)


def test_estimate_holder_rejects_narrow_lag_sets():
    fields = np.zeros((4, 64)) + np.arange(64)
    with pytest.raises(ValueError):
        ST.estimate_holder(fields, 0.1, [4, 5, 6], 0.5)
    with pytest.raises(ValueError):
        ST.estimate_holder(fields, 0.1, [4, 5, 6, 7], 0.5)


def test_estimate_moments_zero_field():
    fields = np.zeros((40, 2, 16))
    rep = ST.estimate_moments(fields, [0.5, 1.0], p=2.0, alpha=1.0)
    assert all(e.estimate == 0.0 for e in rep.sup_moments)
    assert rep.n_alpha_p == 0.0


def test_estimate_moments_gaussian_field():
    rng = np.random.Generator(np.random.Philox(key=8))
    fields = rng.standard_normal((600, 1, 32))
    rep = ST.estimate_moments(fields, [1.0], p=2.0)
    e = rep.sup_moments[0]
    # sup over 32 points of a chi^2 mean: slightly above 1, CI must cover it
    assert 0.9 < e.estimate < 1.4
    assert e.ci_lo <= e.estimate <= e.ci_hi


def test_estimate_moments_needs_replicas():
    with pytest.raises(ValueError):
        ST.estimate_moments(np.zeros((10, 1, 4)), [1.0], p=2.0)


def test_ci_width_shrinks_with_replicas():
    rng = np.random.Generator(np.random.Philox(key=5))
    big = rng.standard_normal((800, 1, 8))
    small = big[:100]
    w_small = ST.estimate_moments(small, [1.0], p=2.0, seed=1).sup_moments[0]
    w_big = ST.estimate_moments(big, [1.0], p=2.0, seed=1).sup_moments[0]
    assert (w_big.ci_hi - w_big.ci_lo) < (w_small.ci_hi - w_small.ci_lo)


def test_moment_table_deterministic_values():
    values = np.full((50, 2), 2.0)
    rows = ST.moment_table(values, [0.5, 1.0], [2.0, 3.0])
    assert len(rows) == 4
    for r in rows:
        assert r.estimate == pytest.approx(2.0 ** r.p)
        assert r.ci_lo == pytest.approx(r.estimate)
        assert r.ci_hi == pytest.approx(r.estimate)


def test_envelope_check_refuses_inadmissible_p():
    fields = np.ones((40, 4, 8))
    rep = ST.estimate_moments(fields, [0.25, 0.5, 0.75, 1.0], p=4.0)
    with pytest.raises(ValueError):
        # d=1, L_b=1, L_sigma=0.3: admissible p caps at 2.78 < 4
        ST.check_growth_envelope(rep, dim=1, L_b=1.0, L_sigma=0.3)


def test_envelope_check_passes_constant_moments():
    fields = np.ones((40, 4, 8))
    rep = ST.estimate_moments(fields, [0.25, 0.5, 0.75, 1.0], p=2.0)
    chk = ST.check_growth_envelope(rep, dim=1, L_b=1.0, L_sigma=0.3)
    assert chk.passed
    assert chk.fitted_rate == pytest.approx(0.0, abs=1e-9)
    assert chk.rate_bound == pytest.approx(4.0)
