"""
stochwave.kernels
=================

Spatial covariance structures for the driving noise: space-time white noise
(d=1), Riesz kernels |x|^{-beta}, Bessel kernels, and anisotropic fractional
product kernels.  Each kernel knows its covariance density f, its spectral
density g (the Fourier transform of f), and the analytic constants that govern
the regularity theory (C_mu, C_mu^(gamma), the rate nu, the increment
exponents b / bbar, and the critical Holder parameter gamma).

Fourier convention used throughout the package::

    F phi(zeta) = int e^{-i zeta.x} phi(x) dx,
    int int phi(x) psi(y) f(x-y) dx dy
        = (2 pi)^{-d} int F phi(zeta) conj(F psi(zeta)) g(zeta) dzeta.

With this convention the spectral constants are

    Riesz      g(zeta) = c_{d,beta} |zeta|^{beta-d},
               c_{d,beta} = 2^{d-beta} pi^{d/2} Gamma((d-beta)/2) / Gamma(beta/2)
    Bessel     g(zeta) = C_{d,kappa} (1+|zeta|^2)^{-kappa/2},
               C_{d,kappa} = (4 pi)^{d/2} Gamma(kappa/2)
    Fractional g(zeta) = prod_i H_i (2H_i - 1) c_{1,2-2H_i} |zeta_i|^{1-2H_i}

(each verified against the covariance density by the Gaussian Fourier-pair
identity; see tests).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import beta as beta_fn
from scipy.special import gamma as gamma_fn
from scipy.special import kv

__all__ = [
    "KernelSpec",
    "KernelAnalytics",
    "QuadratureError",
    "white_noise",
    "riesz",
    "bessel",
    "fractional",
    "covariance_density",
    "spectral_density",
    "compute_analytics",
    "riesz_constant",
    "bessel_constant",
    "fractional_axis_constant",
    "radial_weight",
    "spectral_integral",
    "cell_average",
    "gamma_max",
    "sphere_area",
]

_SPHERE_AREA = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


class QuadratureError(RuntimeError):
    """Raised when an adaptive quadrature fails to reach its tolerance."""


def sphere_area(d):
    """Surface measure of the unit sphere S^{d-1} (2 points for d=1)."""
    return _SPHERE_AREA[d]


# ---------------------------------------------------------------------------
# spectral constants
# ---------------------------------------------------------------------------

def riesz_constant(d, beta):
    """c_{d,beta} with F(|x|^{-beta}) = c_{d,beta} |zeta|^{beta-d}."""
    return 2.0 ** (d - beta) * math.pi ** (d / 2) * gamma_fn((d - beta) / 2) / gamma_fn(beta / 2)


def bessel_constant(d, kappa):
    """C_{d,kappa} with F f_kappa = C_{d,kappa} (1+|zeta|^2)^{-kappa/2}."""
    return (4.0 * math.pi) ** (d / 2) * gamma_fn(kappa / 2)


def fractional_axis_constant(h):
    """Coefficient of |zeta|^{1-2h} in the 1D transform of h(2h-1)|x|^{2h-2}.

    Equals Gamma(2h+1) sin(pi h) (classical fractional-noise spectral constant).
    """
    return h * (2 * h - 1) * riesz_constant(1, 2 - 2 * h)


# ---------------------------------------------------------------------------
# kernel specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelSpec:
    """A spatial covariance kernel.

    family : one of "white", "riesz", "bessel", "fractional"
    dim    : spatial dimension, 1..3 ("white" only for d=1)
    beta   : Riesz exponent, 0 < beta < min(2, d)
    kappa  : Bessel order, kappa > d-2 (and > 0)
    hurst  : tuple of Hurst indices, each in (1/2, 1), sum > d-1
    """

    family: str
    dim: int
    beta: float | None = None
    kappa: float | None = None
    hurst: tuple | None = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.dim}")
        if self.family == "white":
            if self.dim != 1:
                raise ValueError("white noise kernel is only admissible in d=1")
        elif self.family == "riesz":
            if self.beta is None or not 0 < self.beta < min(2, self.dim):
                raise ValueError(
                    f"Riesz exponent must lie in (0, min(2, d)), got {self.beta}")
        elif self.family == "bessel":
            if self.kappa is None or self.kappa <= max(self.dim - 2, 0):
                raise ValueError(
                    f"Bessel order must exceed max(d-2, 0), got {self.kappa}")
        elif self.family == "fractional":
            if self.hurst is None or len(self.hurst) != self.dim:
                raise ValueError("need one Hurst index per coordinate")
            object.__setattr__(self, "hurst", tuple(float(h) for h in self.hurst))
            if not all(0.5 < h < 1 for h in self.hurst):
                raise ValueError(f"Hurst indices must lie in (1/2, 1), got {self.hurst}")
            if sum(self.hurst) <= self.dim - 1:
                raise ValueError("sum of Hurst indices must exceed d-1")
        else:
            raise ValueError(f"unknown kernel family {self.family!r}")

    @property
    def kappa_bar(self):
        """sum(H_i) - (d-1) for the fractional family."""
        if self.family != "fractional":
            raise AttributeError("kappa_bar is only defined for the fractional family")
        return sum(self.hurst) - (self.dim - 1)


def white_noise():
    return KernelSpec("white", 1)


def riesz(dim, beta):
    return KernelSpec("riesz", dim, beta=float(beta))


def bessel(dim, kappa):
    return KernelSpec("bessel", dim, kappa=float(kappa))


def fractional(*hurst):
    return KernelSpec("fractional", len(hurst), hurst=tuple(hurst))


@dataclass(frozen=True)
class KernelAnalytics:
    """Analytic constants of a kernel at a given Holder parameter gamma."""

    c_mu: float
    c_mu_gamma: float
    gamma: float
    gamma_max: float
    nu: float
    b_exp: float | None
    bbar_exp: float | None


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def bessel_profile(kappa, d, r):
    """Closed form of the Bessel covariance density: 2 (r/2)^nu K_nu(r), nu=(kappa-d)/2.

    Vectorized fast path for the w-integral definition (they agree; see tests).
    """
    nu = (kappa - d) / 2
    r = np.asarray(r, dtype=float)
    flat = np.atleast_1d(r).astype(float)
    out = np.full(flat.shape, np.inf)
    pos = flat > 0
    out[pos] = 2.0 * (flat[pos] / 2.0) ** nu * kv(nu, flat[pos])
    if kappa > d:
        out[~pos] = gamma_fn((kappa - d) / 2)
    if r.ndim == 0:
        return float(out[0])
    return out.reshape(r.shape)


def _bessel_density_quad(kappa, d, r):
    """The w-integral definition, by adaptive quadrature."""
    if r == 0.0:
        return gamma_fn((kappa - d) / 2) if kappa > d else math.inf
    integrand = lambda w: w ** ((kappa - d - 2) / 2) * math.exp(-w - r * r / (4 * w))
    lo, err_lo = quad(integrand, 0, 1, epsabs=1e-12, epsrel=1e-8, limit=200)
    hi, err_hi = quad(integrand, 1, np.inf, epsabs=1e-12, epsrel=1e-8, limit=200)
    return lo + hi


def covariance_density(spec, x):
    """Evaluate the covariance density f at the point(s) x.

    x is a scalar (d=1) or an array whose last axis has length d.  Returns +inf
    on the singular set.  The white-noise "density" is the Dirac delta: the
    sentinel +inf is returned at 0 and 0.0 elsewhere.
    """
    x = np.asarray(x, dtype=float)
    if spec.dim == 1 and (x.ndim == 0 or x.shape[-1:] != (1,)):
        pts = x[..., None]
    else:
        pts = x
    if pts.shape[-1] != spec.dim:
        raise ValueError(f"expected points in R^{spec.dim}")
    r = np.linalg.norm(pts, axis=-1)

    if spec.family == "white":
        out = np.where(r == 0, np.inf, 0.0)
    elif spec.family == "riesz":
        with np.errstate(divide="ignore"):
            out = np.where(r > 0, r ** (-spec.beta), np.inf)
    elif spec.family == "bessel":
        out = np.asarray(bessel_profile(spec.kappa, spec.dim, r))
    else:  # fractional
        ch = math.prod(h * (2 * h - 1) for h in spec.hurst)
        with np.errstate(divide="ignore"):
            fac = np.abs(pts) ** np.array([2 * h - 2 for h in spec.hurst])
        out = ch * np.prod(fac, axis=-1)
        out = np.where(np.any(pts == 0, axis=-1), np.inf, out)
    if out.ndim == 0:
        return float(out)
    return out


def spectral_density(spec, zeta):
    """Evaluate the spectral density g at the point(s) zeta.

    Raises on origin queries for the families that are singular there
    (Riesz, Fractional); spectral sampling paths must use `cell_average`.
    """
    zeta = np.asarray(zeta, dtype=float)
    if spec.dim == 1 and (zeta.ndim == 0 or zeta.shape[-1:] != (1,)):
        pts = zeta[..., None]
    else:
        pts = zeta
    if pts.shape[-1] != spec.dim:
        raise ValueError(f"expected points in R^{spec.dim}")
    r = np.linalg.norm(pts, axis=-1)

    if spec.family == "white":
        out = np.ones(np.shape(r))
    elif spec.family == "riesz":
        if np.any(r == 0):
            raise ValueError("Riesz spectral density is singular at the origin; "
                             "use cell_average for sampling weights")
        out = riesz_constant(spec.dim, spec.beta) * r ** (spec.beta - spec.dim)
    elif spec.family == "bessel":
        out = bessel_constant(spec.dim, spec.kappa) * (1 + r * r) ** (-spec.kappa / 2)
    else:
        if np.any(pts == 0):
            raise ValueError("fractional spectral density is singular on the axes; "
                             "use cell_average for sampling weights")
        out = np.ones(np.shape(r))
        for i, h in enumerate(spec.hurst):
            out = out * fractional_axis_constant(h) * np.abs(pts[..., i]) ** (1 - 2 * h)
    if out.ndim == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# radial reduction of spectral integrals
# ---------------------------------------------------------------------------

def _angular_coefficient(spec):
    """A with int_{S^{d-1}} g(r omega) domega = A * _radial_profile(spec, r)."""
    d = spec.dim
    if spec.family == "white":
        return sphere_area(1)
    if spec.family == "riesz":
        return riesz_constant(d, spec.beta) * sphere_area(d)
    if spec.family == "bessel":
        return bessel_constant(d, spec.kappa) * sphere_area(d)
    coef = math.prod(fractional_axis_constant(h) for h in spec.hurst)
    hs = spec.hurst
    if d == 1:
        ang = 2.0
    elif d == 2:
        ang = 2.0 * beta_fn(1 - hs[0], 1 - hs[1])
    else:
        ang = 2.0 * beta_fn(1 - hs[0], 1 - hs[1]) * beta_fn(2 - hs[0] - hs[1], 1 - hs[2])
    return coef * ang


def _radial_profile(spec, r):
    d = spec.dim
    if spec.family == "white":
        return np.ones_like(np.asarray(r, dtype=float))
    if spec.family == "riesz":
        return np.asarray(r, dtype=float) ** (spec.beta - d)
    if spec.family == "bessel":
        return (1 + np.asarray(r, dtype=float) ** 2) ** (-spec.kappa / 2)
    return np.asarray(r, dtype=float) ** (d - 2 * sum(spec.hurst))


def radial_weight(spec, r):
    """A(r) with int_{R^d} g(zeta) w(|zeta|) dzeta = int_0^inf A(r) w(r) dr."""
    r = np.asarray(r, dtype=float)
    return _angular_coefficient(spec) * r ** (spec.dim - 1) * _radial_profile(spec, r)


def tail_exponent(spec):
    """p with radial_weight ~ C r^p as r -> inf, or None for fast decay."""
    d = spec.dim
    if spec.family == "white":
        return 0.0
    if spec.family == "riesz":
        return spec.beta - 1.0
    if spec.family == "bessel":
        return None
    return 2 * d - 1 - 2 * sum(spec.hurst)


def spectral_integral(spec, w, rmax=np.inf, rtol=1e-8, atol=1e-12):
    """(2 pi)^{-d} int_{R^d} g(zeta) w(|zeta|) dzeta by radial quadrature.

    Splits at r=1 to absorb the power-law singularity at the origin.
    """
    fun = lambda r: radial_weight(spec, r) * w(r)
    lo, err_lo = quad(fun, 0, min(1.0, rmax), epsabs=atol, epsrel=rtol, limit=400)
    hi = err_hi = 0.0
    if rmax > 1.0:
        hi, err_hi = quad(fun, 1.0, rmax, epsabs=atol, epsrel=rtol, limit=400)
    val = (2 * math.pi) ** (-spec.dim) * (lo + hi)
    err = (2 * math.pi) ** (-spec.dim) * (err_lo + err_hi)
    if not math.isfinite(val) or err > 100 * max(atol, rtol * abs(val)):
        raise QuadratureError(
            f"radial quadrature did not converge (value {val}, residual {err})")
    return val


def gamma_max(spec):
    """Supremum of the admissible Holder parameter gamma per family."""
    d = spec.dim
    if spec.family == "white":
        return 0.5
    if spec.family == "riesz":
        return (2 - spec.beta) / 2
    if spec.family == "bessel":
        return min((spec.kappa - d + 2) / 2, 1.0)
    return spec.kappa_bar


def compute_analytics(spec, gamma=None, T=1.0):
    """C_mu, C_mu^(gamma) (radial quadrature) and the theoretical exponents.

    gamma defaults to half the family's critical value; it must stay below
    gamma_max or the C_mu^(gamma) integral diverges.
    """
    gmax = gamma_max(spec)
    if gamma is None:
        gamma = gmax / 2
    if not 0 < gamma < min(gmax, 1.0) + 1e-12:
        raise ValueError(f"gamma must lie in (0, {min(gmax, 1.0)}), got {gamma}")
    c_mu = spectral_integral(spec, lambda r: 1.0 / (1 + r * r))
    c_mu_g = spectral_integral(spec, lambda r: 1.0 / (1 + r ** (2 - 2 * gamma)))
    d = spec.dim
    if spec.family == "white":
        nu, b_exp, bbar_exp = 1.0, None, None
    elif spec.family == "riesz":
        nu = 2 - spec.beta
        b_exp = min(2 - spec.beta, 1.0)
        bbar_exp = 2 - spec.beta
    elif spec.family == "bessel":
        nu = min(2.0, spec.kappa - d + 2)
        b_exp = min(spec.kappa - d + 2, 1.0)
        bbar_exp = min(spec.kappa - d + 2, 2.0)
    else:
        kb = spec.kappa_bar
        nu = 2 * kb
        b_exp = bbar_exp = min(2 * kb, min(2 * h - 1 for h in spec.hurst))
    return KernelAnalytics(c_mu=c_mu, c_mu_gamma=c_mu_g, gamma=gamma,
                           gamma_max=gmax, nu=nu, b_exp=b_exp, bbar_exp=bbar_exp)


# ---------------------------------------------------------------------------
# origin-cell averages for spectral sampling
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cube_power_moment(d, beta):
    """int_{[-1,1]^d} |u|^{beta-d} du (finite for beta > 0)."""
    if d == 1:
        return 2.0 / beta
    if d == 2:
        # polar with R(theta) = 1/max(|cos|,|sin|); 8-fold symmetry
        val, _ = quad(lambda th: math.cos(th) ** (-beta), 0, math.pi / 4, limit=200)
        return 8.0 * val / beta
    # d=3: six faces, each parametrized by (p,q) in [-1,1]^2
    from numpy.polynomial.legendre import leggauss
    xg, wg = leggauss(80)
    P, Q = np.meshgrid(xg, xg, indexing="ij")
    W = np.outer(wg, wg)
    face = np.sum(W * (1 + P * P + Q * Q) ** ((beta - 3) / 2))
    return 6.0 * face / beta


def cell_average(spec, h):
    """Average of g over the origin-centred cell [-h,h]^d (closed/radial form).

    Used as the zero-mode weight in spectral sampling where g itself may be
    singular at the origin.
    """
    d = spec.dim
    if spec.family == "white":
        return 1.0
    if spec.family == "bessel":
        return bessel_constant(d, spec.kappa)
    if spec.family == "riesz":
        c = riesz_constant(d, spec.beta)
        integral = c * h ** spec.beta * _cube_power_moment(d, spec.beta)
        return integral / (2 * h) ** d
    return math.prod(fractional_axis_cell_average(hh, h) for hh in spec.hurst)


def fractional_axis_cell_average(hurst, h):
    """Average of the per-axis factor c_h |zeta|^{1-2H} over [-h, h]."""
    return fractional_axis_constant(hurst) * h ** (1 - 2 * hurst) / (2 - 2 * hurst)
