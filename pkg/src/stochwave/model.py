"""
stochwave.model
===============

Problem definition for the semilinear wave equation

    du_tt = Delta u + b(u) + sigma(u) dW

on R^d, d = 1, 2, 3: coefficient pairs with superlinear (logarithmic-factor)
growth, truncation to globally Lipschitz pairs, the drift-domination
conditions for global existence, initial data with closed-form derivatives,
the deterministic free-wave term, and the moment growth envelope.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import greens as _greens

__all__ = [
    "ln_plus", "CoefficientPair", "superlinear", "lipschitz",
    "truncate", "truncated_constants",
    "DominationVerdict", "check_domination",
    "InitialData", "initial_term",
    "admissible_p", "initial_sup_term", "moment_envelope",
]


def ln_plus(z):
    """ln(z v e) for z >= 0 (applied to |z| elementwise)."""
    return np.log(np.maximum(np.abs(z), math.e))


@dataclass(frozen=True)
class CoefficientPair:
    """Drift b and diffusion sigma with their growth envelope

        |b(z)|     <= theta1 + theta2 |z| ln_+(|z|)^delta
        |sigma(z)| <= sigma1 + sigma2 |z| ln_+(|z|)^a
    """

    drift: object
    diffusion: object
    theta1: float
    theta2: float
    delta: float
    sigma1: float
    sigma2: float
    a: float

    def b(self, z):
        return self.drift(np.asarray(z, dtype=float))

    def sigma(self, z):
        return self.diffusion(np.asarray(z, dtype=float))


def superlinear(theta2, delta, sigma2, a, theta1=0.0, sigma1=0.0):
    """Canonical superlinear pair: b = theta1 + theta2 z ln_+^delta |z|,
    sigma = sigma1 + sigma2 z ln_+^a |z|."""
    drift = lambda z: theta1 + theta2 * z * ln_plus(z) ** delta
    diffusion = lambda z: sigma1 + sigma2 * z * ln_plus(z) ** a
    return CoefficientPair(drift, diffusion, theta1, theta2, delta,
                           sigma1, sigma2, a)


def lipschitz(L_b, L_sigma, c_b=0.0, c_sigma=0.0):
    """Globally Lipschitz affine pair b = c_b + L_b z, sigma = c_sigma + L_sigma z."""
    drift = lambda z: c_b + L_b * z
    diffusion = lambda z: c_sigma + L_sigma * z
    return CoefficientPair(drift, diffusion, c_b, L_b, 0.0, c_sigma, L_sigma, 0.0)


def truncate(pair, N):
    """Globally Lipschitz truncation: g_N(z) = g(clip(z, -N, N))."""
    if N < 1:
        raise ValueError("truncation level must be >= 1")
    drift = lambda z: pair.drift(np.clip(z, -N, N))
    diffusion = lambda z: pair.diffusion(np.clip(z, -N, N))
    return replace(pair, drift=drift, diffusion=diffusion)


def truncated_constants(pair, N):
    """Affine-growth constants (c, L) of the truncated pair at level N >= 2:

        c(b_N) = theta1,  L(b_N) = theta2 (1 + delta) ln_+(N)^delta
        (same for sigma with exponent a).

    The slope of z ln_+(z)^delta on [e, N] is ln(z)^{delta-1} (ln z + delta),
    maximised at z = N and bounded by (1 + delta) ln(N)^delta there; below e
    the profile is linear with unit slope, also within the bound.
    """
    if N < 2:
        raise ValueError("constants are valid for N >= 2")
    ln = float(ln_plus(N))
    return {
        "c_b": pair.theta1,
        "c_sigma": pair.sigma1,
        "L_b": pair.theta2 * (1.0 + pair.delta) * ln ** pair.delta,
        "L_sigma": pair.sigma2 * (1.0 + pair.a) * ln ** pair.a,
    }


@dataclass(frozen=True)
class DominationVerdict:
    satisfied: bool
    condition: str
    margin: float
    note: str = ""


def check_domination(pair, dim, gamma=None, c_mu=None, nu1=None, nu2=None):
    """Does the drift dominate the diffusion strongly enough for global
    existence?

    d=1 (white noise): delta > 2a, or delta = 2a with
        theta2 > (8/gamma) sigma2^2, gamma the effective Holder exponent.
    d=2,3: delta > 4a, or delta = 4a with
        theta2 > 2^12 3^2 C_mu^2 sigma2^4 (1/nu1 + d/nu2)^2.
    """
    delta, a = pair.delta, pair.a
    if dim == 1:
        note = "" if delta < 2 else "delta >= 2: outside the guaranteed regime"
        if delta > 2 * a:
            return DominationVerdict(True, "growth-exponent gap (delta > 2a)",
                                     delta - 2 * a, note)
        if delta == 2 * a:
            if gamma is None:
                raise ValueError("the equality case needs gamma")
            bound = (8.0 / gamma) * pair.sigma2 ** 2
            ok = pair.theta2 > bound
            return DominationVerdict(
                ok, "equality case (delta = 2a)", pair.theta2 - bound,
                note or f"threshold (8/gamma) sigma2^2 = {bound:g}")
        return DominationVerdict(False, "delta < 2a", delta - 2 * a, note)

    note = "" if delta < 0.5 else "delta >= 1/2: outside the guaranteed regime"
    if delta > 4 * a:
        return DominationVerdict(True, "growth-exponent gap (delta > 4a)",
                                 delta - 4 * a, note)
    if delta == 4 * a:
        if c_mu is None or nu1 is None or nu2 is None:
            raise ValueError("the equality case needs c_mu, nu1, nu2")
        bound = (2 ** 12 * 9 * c_mu ** 2 * pair.sigma2 ** 4
                 * (1.0 / nu1 + dim / nu2) ** 2)
        ok = pair.theta2 > bound
        return DominationVerdict(
            ok, "equality case (delta = 4a)", pair.theta2 - bound,
            note or f"threshold 2^12 3^2 C_mu^2 sigma2^4 (1/nu1+d/nu2)^2 = {bound:g}")
    return DominationVerdict(False, "delta < 4a", delta - 4 * a, note)


# ---------------------------------------------------------------------------
# initial data
# ---------------------------------------------------------------------------

def _as_points(x, dim):
    x = np.asarray(x, dtype=float)
    if dim == 1:
        if x.ndim == 0:
            return x.reshape(1, 1), True
        if x.ndim == 1:
            return x.reshape(-1, 1), False
        return x, False
    if x.shape == (dim,):
        return x.reshape(1, dim), True
    return x.reshape(-1, dim), False


@dataclass(frozen=True)
class InitialData:
    """Initial displacement u0 and velocity v0 with closed-form derivatives.

    All callables take an (N, d) array of points.  Sup-norms and Holder
    exponents (gamma1 for u0, gamma2 for v0) feed the moment envelope and the
    regularity checks.
    """

    dim: int
    u0: object
    v0: object
    grad_u0: object
    lap_u0: object
    u0_sup: float
    v0_sup: float
    grad_u0_sup: float
    lap_u0_sup: float
    gamma1: float = 1.0
    gamma2: float = 1.0
    support_radius: float = np.inf

    @staticmethod
    def zero(dim):
        return InitialData.constant(dim, 0.0, 0.0)

    @staticmethod
    def constant(dim, value_u=1.0, value_v=0.0):
        return InitialData(
            dim=dim,
            u0=lambda p: np.full(p.shape[0], float(value_u)),
            v0=lambda p: np.full(p.shape[0], float(value_v)),
            grad_u0=lambda p: np.zeros_like(p),
            lap_u0=lambda p: np.zeros(p.shape[0]),
            u0_sup=abs(value_u), v0_sup=abs(value_v),
            grad_u0_sup=0.0, lap_u0_sup=0.0, support_radius=0.0)

    @staticmethod
    def bump(dim, amplitude=1.0, radius=1.0, v_amplitude=0.0):
        """Compactly supported C^2 bump A (1 - |x|^2/rho^2)^3 on |x| < rho,
        with v0 a bump of the same shape scaled by `v_amplitude`."""
        A, rho = float(amplitude), float(radius)

        def profile(p):
            q = np.sum(p * p, axis=-1) / rho ** 2
            return np.where(q < 1, (1 - np.minimum(q, 1.0)) ** 3, 0.0)

        def grad(p):
            q = np.sum(p * p, axis=-1) / rho ** 2
            fac = np.where(q < 1, -6 * (1 - np.minimum(q, 1.0)) ** 2, 0.0) / rho ** 2
            return A * fac[..., None] * p

        def lap(p):
            q = np.sum(p * p, axis=-1) / rho ** 2
            qc = np.minimum(q, 1.0)
            val = (-6 * dim * (1 - qc) ** 2 + 24 * qc * (1 - qc)) / rho ** 2
            return A * np.where(q < 1, val, 0.0)

        # extrema of the radial derivative/laplacian profiles
        r = np.linspace(0, rho, 4001).reshape(-1, 1)
        pad = np.zeros((r.shape[0], dim))
        pad[:, 0] = r[:, 0]
        gsup = float(np.max(np.linalg.norm(grad(pad), axis=-1)))
        lsup = float(np.max(np.abs(lap(pad))))
        return InitialData(
            dim=dim,
            u0=lambda p: A * profile(p),
            v0=lambda p: float(v_amplitude) * profile(p),
            grad_u0=grad, lap_u0=lap,
            u0_sup=abs(A), v0_sup=abs(float(v_amplitude)),
            grad_u0_sup=gsup, lap_u0_sup=lsup,
            support_radius=rho)


@lru_cache(maxsize=None)
def _psi_theta_rule(n_psi=48, n_theta=96):
    from numpy.polynomial.legendre import leggauss
    x, w = leggauss(n_psi)
    psi = math.pi / 4 * (x + 1)
    wpsi = math.pi / 4 * w
    theta = 2 * math.pi * (np.arange(n_theta) + 0.5) / n_theta
    return psi, wpsi, theta


@lru_cache(maxsize=None)
def _ball_rule(n_rad=32, n_colat=32, n_lon=64):
    from numpy.polynomial.legendre import leggauss
    x, w = leggauss(n_rad)
    r = (x + 1) / 2
    wr = w / 2
    pts, ws = _greens.sphere_rule(n_colat, n_lon)
    nodes = r[:, None, None] * pts[None, :, :]
    weights = (3.0 * r * r * wr)[:, None] * (ws / (4 * math.pi))[None, :]
    return nodes.reshape(-1, 3), weights.reshape(-1)


def initial_term(init, t, x):
    """The deterministic free-wave part I0(t, x) = d/dt[G(t)*u0] + G(t)*v0.

    x: a point (scalar for d=1, length-d array) or an (N, d) array of points.
    """
    d = init.dim
    pts, scalar = _as_points(x, d)
    if t == 0:
        out = init.u0(pts)
        return float(out[0]) if scalar else out
    if t < 0:
        raise ValueError("need t >= 0")
    out = np.empty(pts.shape[0])
    if d == 1:
        from scipy.integrate import quad
        for i, (xi,) in enumerate(pts):
            vint, _ = quad(lambda y: init.v0(np.array([[y]])).item(),
                           xi - t, xi + t, limit=200)
            left = init.u0(np.array([[xi - t]])).item()
            right = init.u0(np.array([[xi + t]])).item()
            out[i] = 0.5 * (left + right) + 0.5 * vint
    elif d == 2:
        dpts, dw = _greens.disk_rule()
        psi, wpsi, theta = _psi_theta_rule()
        sp = np.sin(psi)
        omega = np.stack([np.cos(theta), np.sin(theta)], axis=-1)   # (nt, 2)
        for i, xi in enumerate(pts):
            gu = float(np.sum(dw * init.u0(xi[None, :] - t * dpts)))
            gv = t * float(np.sum(dw * init.v0(xi[None, :] - t * dpts)))
            # derivative correction: (t/2pi) iint sin^2 psi (omega.grad u0)
            ev = xi[None, None, :] - t * sp[:, None, None] * omega[None, :, :]
            g = init.grad_u0(ev.reshape(-1, 2)).reshape(len(psi), len(theta), 2)
            corr = np.sum(wpsi[:, None] * sp[:, None] ** 2
                          * np.sum(g * omega[None, :, :], axis=-1)) * (2 * math.pi / len(theta))
            out[i] = gu - (t / (2 * math.pi)) * corr + gv
    else:
        spts, sw = _greens.sphere_rule()
        bpts, bw = _ball_rule()
        for i, xi in enumerate(pts):
            mu = float(np.sum(sw * init.u0(xi[None, :] + t * spts))) / (4 * math.pi)
            mv = float(np.sum(sw * init.v0(xi[None, :] + t * spts))) / (4 * math.pi)
            bl = float(np.sum(bw * init.lap_u0(xi[None, :] + t * bpts)))
            out[i] = mu + (t * t / 3.0) * bl + t * mv
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# moment envelope
# ---------------------------------------------------------------------------

def admissible_p(dim, L_b, L_sigma, c_mu=None):
    """Moment orders (p_min, p_max) covered by the growth envelope, after
    checking the smallness condition that links L(b) and L(sigma)."""
    if dim == 1:
        if L_b < 8 * L_sigma ** 2:
            raise ValueError("envelope needs L(b) >= 8 L(sigma)^2")
        return 2.0, L_b / (4 * L_sigma ** 2)
    if c_mu is None:
        raise ValueError("d >= 2 needs c_mu")
    if L_b < max(2 ** 12 * 9 * c_mu ** 2 * L_sigma ** 4, 0.25):
        raise ValueError("envelope needs L(b) >= (2^12 3^2 C_mu^2 L(sigma)^4) v 1/4")
    return 2.0, math.sqrt(L_b) / (2 ** 5 * 3 * c_mu * L_sigma ** 2)


def initial_sup_term(init, L_b):
    """The initial-data contribution T0 to the moment envelope."""
    if init.dim == 1:
        return math.exp(-1) * init.v0_sup / math.sqrt(L_b) + 2 * init.u0_sup
    if init.dim == 2:
        return init.u0_sup + (init.grad_u0_sup + init.v0_sup) / math.sqrt(L_b)
    return init.u0_sup + init.lap_u0_sup + init.v0_sup / math.sqrt(L_b)


def moment_envelope(init, p, t, L_b, L_sigma, c_b=0.0, c_sigma=0.0,
                    c_mu=None, prefactor=1.0):
    """Upper envelope for sup_x E|u(t,x)|^p:

        prefactor^p exp(2 p t sqrt(L(b))) [ T0 + c(b)/L(b) + c(sigma)/L(sigma) ]^p

    The universal constant is not pinned by the theory; `prefactor` exposes it.
    """
    lo, hi = admissible_p(init.dim, L_b, L_sigma, c_mu)
    if not lo <= p <= hi:
        raise ValueError(f"p must lie in [{lo:g}, {hi:g}] for this pair")
    base = initial_sup_term(init, L_b)
    if L_sigma > 0:
        base += c_sigma / L_sigma
    base += c_b / L_b
    return (prefactor * base) ** p * math.exp(2 * p * t * math.sqrt(L_b))
