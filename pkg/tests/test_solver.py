"""Unit tests for the time-stepping solver and its mild-formulation oracles."""
import math

import numpy as np
import pytest

from stochwave import kernels as K
from stochwave import model as M
from stochwave import noise as N
from stochwave import solver as S

ZERO_PAIR = M.lipschitz(0.0, 0.0)


def _cosine_data(grid, mode=1):
    k = 2 * math.pi * mode / grid.length
    return M.InitialData(
        dim=1,
        u0=lambda p: np.cos(k * p[:, 0]),
        v0=lambda p: np.zeros(p.shape[0]),
        grad_u0=lambda p: -k * np.sin(k * p[:, 0])[:, None],
        lap_u0=lambda p: -k * k * np.cos(k * p[:, 0]),
        u0_sup=1.0, v0_sup=0.0, grad_u0_sup=k, lap_u0_sup=k * k), k


def test_free_wave_cosine_is_exact():
    grid = N.GridSpec(dim=1, n=64, length=2.0, dt=0.05)
    init, k = _cosine_data(grid)
    T = 0.75
    res = S.run_path(grid, K.white_noise(), ZERO_PAIR, init, T, save_times=(T,))
    # initial data is sampled on the centred torus coordinates x - L/2
    x = grid.axis() - grid.length / 2
    exact = np.cos(k * x) * math.cos(k * T)
    assert np.allclose(res.fields[-1], exact, atol=1e-10)


def test_free_wave_energy_conserved():
    grid = N.GridSpec(dim=2, n=32, length=4.0, dt=0.02)
    init = M.InitialData.bump(2, amplitude=1.0, radius=1.0)
    res = S.run_path(grid, K.riesz(2, 1.0), ZERO_PAIR, init, 1.0,
                     save_times=(1.0,))
    # spectral energy |v|^2 + |grad u|^2 of the trig scheme is exactly
    # conserved for the free wave
    prop = S.Propagator(grid)
    uh, vh = prop.initial_modes(init)
    e0 = np.sum(np.abs(vh) ** 2 + prop.omega ** 2 * np.abs(uh) ** 2)
    uh1 = np.fft.fftn(res.u_final)
    vh1 = np.fft.fftn(res.v_final)
    e1 = np.sum(np.abs(vh1) ** 2 + prop.omega ** 2 * np.abs(uh1) ** 2)
    assert e1 == pytest.approx(e0, rel=1e-10)


def test_zero_everything_stays_zero():
    grid = N.GridSpec(dim=1, n=64, length=4.0, dt=0.05)
    pair = M.lipschitz(1.0, 0.5)   # b, sigma vanish at 0
    res = S.run_path(grid, K.white_noise(), pair, M.InitialData.zero(1), 1.0,
                     save_times=(1.0,))
    assert np.allclose(res.fields[-1], 0.0)
    assert res.sup_abs == 0.0


def test_run_path_deterministic():
    grid = N.GridSpec(dim=1, n=64, length=4.0, dt=0.05)
    pair = M.lipschitz(1.0, 0.5, c_sigma=1.0)
    init = M.InitialData.bump(1)
    a = S.run_path(grid, K.white_noise(), pair, init, 0.5, seed=9, path=2,
                   save_times=(0.5,))
    b = S.run_path(grid, K.white_noise(), pair, init, 0.5, seed=9, path=2,
                   save_times=(0.5,))
    assert np.array_equal(a.fields, b.fields)
    c = S.run_path(grid, K.white_noise(), pair, init, 0.5, seed=9, path=3,
                   save_times=(0.5,))
    assert not np.array_equal(a.fields, c.fields)


def test_mild_and_stepping_agree():
    grid = N.GridSpec(dim=1, n=128, length=4.0, dt=1.0 / 64)
    pair = M.lipschitz(1.0, 0.5, c_sigma=0.5)
    init = M.InitialData.bump(1)
    T = 0.5
    hist = S.mild_solve(grid, K.white_noise(), pair, init, T, seed=4)
    res = S.run_path(grid, K.white_noise(), pair, init, T, seed=4,
                     save_times=(T,))
    rel = np.max(np.abs(hist[-1] - res.fields[-1])) / max(
        np.max(np.abs(res.fields[-1])), 1e-12)
    assert rel < 0.05


def test_picard_contracts_and_matches_mild():
    grid = N.GridSpec(dim=1, n=64, length=4.0, dt=1.0 / 32)
    pair = M.lipschitz(1.0, 0.5, c_sigma=0.5)
    init = M.InitialData.bump(1)
    T = 0.5
    iterates = S.picard_solve(grid, K.white_noise(), pair, init, T, 6, seed=4)
    gaps = [np.max(np.abs(iterates[k + 1] - iterates[k]))
            for k in range(len(iterates) - 1)]
    ratios = [b / a for a, b in zip(gaps, gaps[1:])]
    assert all(r < 1 for r in ratios)
    hist = S.mild_solve(grid, K.white_noise(), pair, init, T, seed=4)
    assert np.max(np.abs(iterates[-1] - hist)) < 1e-8 * max(np.max(np.abs(hist)), 1)


def test_picard_cap():
    grid = N.GridSpec(dim=1, n=512, length=4.0, dt=0.05)
    with pytest.raises(ValueError):
        S.picard_solve(grid, K.white_noise(), ZERO_PAIR,
                       M.InitialData.zero(1), 0.5, 3)


def test_observation_mask():
    grid = N.GridSpec(dim=2, n=32, length=8.0, dt=0.1)
    mask = S.observation_mask(grid, 2.0)
    xy = grid.mesh() - grid.length / 2
    r = np.sqrt(np.sum(xy ** 2, axis=-1))
    assert np.array_equal(mask, r <= 2.0)
    assert 0 < mask.sum() < mask.size


def test_threshold_stops_path():
    grid = N.GridSpec(dim=1, n=64, length=4.0, dt=0.05)
    init = M.InitialData.constant(1, value_u=0.0, value_v=2.0)  # u = 2t
    res = S.run_path(grid, K.white_noise(), ZERO_PAIR, init, 1.0,
                     threshold=1.0)
    assert res.blowup_time is not None
    assert res.blowup_time == pytest.approx(0.5, abs=2 * grid.dt)
    assert res.sup_abs >= 1.0


def test_support_stays_in_light_cone():
    grid = N.GridSpec(dim=1, n=1024, length=8.0, dt=1.0 / 128)
    pair = M.lipschitz(1.0, 0.5)
    init = M.InitialData.bump(1, radius=1.0)
    T = 0.5
    res = S.run_path(grid, K.white_noise(), pair, init, T, seed=3,
                     save_times=(T,))
    x = grid.mesh()[..., 0] - grid.length / 2
    outside = np.abs(x) > 1.0 + T + 2 * grid.h
    rel = np.max(np.abs(res.fields[-1][outside])) / np.max(np.abs(res.fields[-1]))
    assert rel < 1e-3


def test_free_field_unchanged_under_domain_enlargement():
    # deterministic free evolution of compactly supported data must not feel
    # the torus size as long as the light cone fits
    init = M.InitialData.bump(1, radius=1.0)
    T = 0.5
    vals = {}
    for L, n in ((8.0, 256), (16.0, 512)):   # same spacing
        grid = N.GridSpec(dim=1, n=n, length=L, dt=1.0 / 64)
        res = S.run_path(grid, K.white_noise(), ZERO_PAIR, init, T,
                         save_times=(T,))
        x = grid.mesh()[..., 0] - L / 2
        sel = np.abs(x) <= 3.0
        vals[L] = res.fields[-1][sel]
    assert np.allclose(vals[8.0], vals[16.0], atol=1e-8)


def test_blowup_tau_monotone_small():
    grid = N.GridSpec(dim=1, n=64, length=6.0, dt=1.0 / 16)
    pair = M.superlinear(theta2=4.0, delta=1.0, sigma2=1.5, a=0.25, sigma1=1.0)
    recs, tau = S.blowup_experiment(grid, K.white_noise(), pair,
                                    M.InitialData.zero(1), 1.0,
                                    [1.0, 1.5, 2.5], 20, seed=2, radius=1.5)
    assert np.all(np.diff(tau, axis=1) >= 0)
    assert [r.threshold for r in recs] == [1.0, 1.5, 2.5]
    assert all(0 <= r.p_hat <= 1 for r in recs)


def test_wilson_interval():
    lo, hi = S.wilson_interval(5, 10)
    assert 0 < lo < 0.5 < hi < 1
    lo0, hi0 = S.wilson_interval(0, 10)
    assert lo0 == 0 or lo0 == pytest.approx(0, abs=1e-12)
    assert hi0 < 0.5
