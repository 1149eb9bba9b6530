"""Unit tests for the covariance-kernel module.

Numeric reference values were frozen from independent closed-form /
quadrature evaluations (Gamma-function identities, adaptive integration of
the radial spectral weights).
"""
import math

import numpy as np
import pytest
from scipy import integrate as sint

from stochwave import kernels as K

# (spec factory args, frozen C_mu)
CMU_ORACLE = [
    (K.white_noise(), 0.5),
    (K.riesz(2, 0.5), 1.0618241361059643),
    (K.riesz(2, 1.0), math.pi / 2),
    (K.riesz(2, 1.5), 4.647476009),
    (K.riesz(3, 0.5), 0.8862269254527580),
    (K.riesz(3, 1.0), 1.0),
    (K.riesz(3, 1.5), 1.7724538509055159),
    (K.bessel(2, 2.0), 1.0),
    (K.bessel(3, 3.0), 2.0 / 3.0),
    (K.fractional(0.75, 0.75), 0.5214585030770473),
]


@pytest.mark.parametrize("spec,expected", CMU_ORACLE,
                         ids=lambda v: str(v) if not isinstance(v, K.KernelSpec)
                         else f"{v.family}-d{v.dim}")
def test_c_mu_matches_frozen_oracle(spec, expected):
    an = K.compute_analytics(spec)
    assert an.c_mu == pytest.approx(expected, rel=2e-6)


def test_spec_validation_rejects_bad_parameters():
    with pytest.raises(ValueError):
        K.KernelSpec("white", 2)
    with pytest.raises(ValueError):
        K.riesz(2, 2.0)          # beta must be < min(2, d)
    with pytest.raises(ValueError):
        K.riesz(1, 1.0)
    with pytest.raises(ValueError):
        K.bessel(3, 1.0)         # kappa must exceed d - 2
    with pytest.raises(ValueError):
        K.fractional(0.4, 0.8)   # H must be > 1/2
    with pytest.raises(ValueError):
        K.fractional(0.75)       # need one index per coordinate in d=2?
        K.KernelSpec("fractional", 2, hurst=(0.75,))
    with pytest.raises(ValueError):
        K.KernelSpec("cauchy", 1)


def test_gamma_max_per_family():
    assert K.gamma_max(K.white_noise()) == 0.5
    assert K.gamma_max(K.riesz(2, 0.5)) == pytest.approx(0.75)
    assert K.gamma_max(K.bessel(3, 3.0)) == pytest.approx(1.0)
    assert K.gamma_max(K.bessel(2, 2.5)) == pytest.approx(1.0)
    assert K.gamma_max(K.bessel(2, 1.2)) == pytest.approx(0.6)
    assert K.gamma_max(K.fractional(0.7, 0.8)) == pytest.approx(0.5)


def test_analytics_exponents():
    an = K.compute_analytics(K.riesz(3, 0.5))
    assert an.nu == pytest.approx(1.5)
    assert an.b_exp == pytest.approx(1.0)
    assert an.bbar_exp == pytest.approx(1.5)
    an = K.compute_analytics(K.bessel(3, 3.5))
    assert an.nu == pytest.approx(2.0)
    assert an.b_exp == pytest.approx(1.0)
    assert an.bbar_exp == pytest.approx(2.0)
    an = K.compute_analytics(K.fractional(0.75, 0.75))
    assert an.nu == pytest.approx(1.0)
    assert an.b_exp == pytest.approx(0.5)
    assert an.bbar_exp == pytest.approx(0.5)
    an = K.compute_analytics(K.white_noise())
    assert an.nu == pytest.approx(1.0)
    assert an.b_exp is None and an.bbar_exp is None


def test_gamma_validation():
    spec = K.riesz(2, 1.0)   # gamma_max = 0.5
    with pytest.raises(ValueError):
        K.compute_analytics(spec, gamma=0.7)
    with pytest.raises(ValueError):
        K.compute_analytics(spec, gamma=0.0)
    an = K.compute_analytics(spec, gamma=0.3)
    assert an.gamma == 0.3 and np.isfinite(an.c_mu_gamma)


@pytest.mark.parametrize("spec", [K.riesz(2, 0.8), K.riesz(3, 1.3),
                                  K.bessel(2, 2.0), K.bessel(3, 3.0)])
def test_parseval_pairing_with_gaussian(spec):
    """<f, phi> = (2 pi)^-d <g, F phi> for a centred Gaussian test function.

    This ties the real-space covariance density to the spectral density under
    the non-unitary Fourier convention used throughout the package.
    """
    d = spec.dim
    sd = K.sphere_area(d)

    def frad(r):
        x = np.zeros(d)
        x[0] = r
        return K.covariance_density(spec, x)

    def grad(r):
        z = np.zeros(d)
        z[0] = r
        return K.spectral_density(spec, z)

    lhs = sint.quad(lambda r: frad(r) * math.exp(-r * r / 2) * sd * r ** (d - 1),
                    0, 40, limit=400, points=[1e-6, 1.0])[0]
    # F[e^{-|x|^2/2}](zeta) = (2 pi)^{d/2} e^{-|zeta|^2/2}
    rhs = (2 * math.pi) ** (-d / 2) * sint.quad(
        lambda r: grad(r) * math.exp(-r * r / 2) * sd * r ** (d - 1),
        0, 40, limit=400, points=[1e-6, 1.0])[0]
    assert lhs == pytest.approx(rhs, rel=1e-5)


def test_fractional_axis_pairing():
    H = 0.7
    lhs = 2 * sint.quad(lambda x: H * (2 * H - 1) * x ** (2 * H - 2)
                        * math.exp(-x * x / 2), 0, 30, limit=400)[0]
    c = K.fractional_axis_constant(H)
    rhs = (2 * math.pi) ** -1 * 2 * sint.quad(
        lambda z: c * z ** (1 - 2 * H) * math.sqrt(2 * math.pi)
        * math.exp(-z * z / 2), 0, 30, limit=400)[0]
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_riesz_covariance_scaling():
    spec = K.riesz(2, 0.7)
    x = np.array([0.3, -0.4])
    for lam in (0.5, 2.0, 7.0):
        assert K.covariance_density(spec, lam * x) == pytest.approx(
            lam ** -0.7 * K.covariance_density(spec, x), rel=1e-12)


def test_spectral_density_positive():
    for spec in (K.riesz(2, 1.0), K.bessel(3, 3.0), K.fractional(0.75, 0.75)):
        pts = np.array([0.1, 1.0, 10.0])
        for r in pts:
            z = np.full(spec.dim, r / math.sqrt(spec.dim))
            assert K.spectral_density(spec, z) > 0


def test_cell_average_scaling_riesz():
    # the cell average of |zeta|^{-(d - beta)} over a cube of half-width h
    # scales exactly like h^{-(d - beta)}
    spec = K.riesz(2, 0.6)
    a1, a2 = K.cell_average(spec, 0.1), K.cell_average(spec, 0.2)
    assert a1 / a2 == pytest.approx(2.0 ** (2 - 0.6), rel=1e-9)


def test_fractional_axis_cell_average_matches_quadrature():
    H, h = 0.75, 0.3
    c = K.fractional_axis_constant(H)
    exact = sint.quad(lambda z: c * abs(z) ** (1 - 2 * H), -h, h,
                      points=[0.0], limit=200)[0] / (2 * h)
    assert K.fractional_axis_cell_average(H, h) == pytest.approx(exact, rel=1e-8)


def test_bessel_profile_positive_and_integrable():
    r = np.array([0.05, 0.3, 1.0, 3.0])
    vals = K.bessel_profile(2.0, 2, r)
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) < 0)  # radially decreasing


def test_spectral_integral_finite_and_monotone():
    spec = K.riesz(3, 1.0)
    full = K.spectral_integral(spec, lambda r: 1.0 / (1 + r * r))
    trunc = K.spectral_integral(spec, lambda r: 1.0 / (1 + r * r), rmax=10.0)
    assert 0 < trunc < full
