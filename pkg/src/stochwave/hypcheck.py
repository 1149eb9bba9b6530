"""
stochwave.hypcheck
==================

Numerical verification of the analytic hypotheses on the noise kernel:

* the small-time rate of J(t) = (2 pi)^{-d} int |FG(t)|^2 dmu  (expected t^nu),
* the first- and second-difference kernel exponents b and b-bar from the
  shifted double integrals over a pair of unit wave fronts,
* the derived critical exponents (nu1, nu2) and the family's predicted
  space-time Holder exponent,
* divergence detection for the regularity-weighted spectral integrals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import greens as _greens
from . import kernels as _kern
from .stats import fit_power_law

__all__ = [
    "H3Fit", "fit_h3_rate",
    "H4Fit", "fit_h4_exponents",
    "critical_exponents", "conclusion_exponent",
    "integral_diverges", "hypothesis_report",
]


@dataclass(frozen=True)
class H3Fit:
    fitted_nu: float
    expected_nu: float
    t_values: tuple
    j_values: tuple
    fit_residual: float
    one_sided: bool = False


def fit_h3_rate(spec, exponents=range(2, 9)):
    """Fit nu in J(t) ~ C t^nu over dyadic t = 2^-k.

    For the inverse-multiquadric spectral family the theoretical rate is a
    strict upper bound (the endpoint carries a logarithm), so the fit is
    flagged one-sided: pass when fitted nu <= expected nu + margin.
    """
    ts = np.array([2.0 ** (-k) for k in exponents])
    js = np.array([_greens._spectral_cross(t, t, spec, 0.0) for t in ts])
    slope, resid = fit_power_law(ts, js)
    expected = _kern.compute_analytics(spec).nu
    return H3Fit(fitted_nu=slope, expected_nu=expected,
                 t_values=tuple(ts), j_values=tuple(js), fit_residual=resid,
                 one_sided=spec.family == "bessel")


# ---------------------------------------------------------------------------
# kernel difference exponents (shifted double integrals on unit fronts)
# ---------------------------------------------------------------------------

def _cov(spec, pts):
    vals = _kern.covariance_density(spec, pts)
    return np.where(np.isfinite(vals), vals, 0.0)


def _radial_cov(spec, r):
    """Covariance density of an isotropic kernel at the given radii."""
    r = np.asarray(r, dtype=float)
    pts = np.zeros(r.shape + (spec.dim,))
    pts[..., 0] = r
    return _cov(spec, pts)


def _panel_rule(edges, nodes=4):
    """Composite Gauss-Legendre rule over the given ascending panel edges."""
    x, w = leggauss(nodes)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    X = (mid[:, None] + half[:, None] * x).ravel()
    W = (half[:, None] * w).ravel()
    return X, W


def _geom_rule(lo, hi, n_panels, nodes=4):
    return _panel_rule(np.geomspace(lo, hi, n_panels + 1), nodes)


def _clustered_rule(lo, hi, centers, n_geo=7, nodes=3, eps=1e-8):
    """Rule on (lo, hi) with panels accumulating geometrically at each
    interior singular point and at the subinterval boundaries."""
    cs = sorted({float(c) for c in centers if lo < c < hi})
    bounds = [lo] + cs + [hi]
    Xs, Ws = [], []
    for a, b in zip(bounds[:-1], bounds[1:]):
        if b - a <= 0:
            continue
        m = 0.5 * (a + b)
        for c, far in ((a, m), (b, m)):
            edges = c + (far - c) * np.geomspace(eps, 1.0, n_geo + 1)
            if edges[0] > edges[-1]:
                edges = edges[::-1]
            X, W = _panel_rule(edges, nodes)
            Xs.append(X)
            Ws.append(W)
    return np.concatenate(Xs), np.concatenate(Ws)


def _sliver(value, value_in, vmin, shrink=16.0):
    """Analytic tail below vmin assuming a local power law g(v) ~ C v^-alpha."""
    if value <= 0 or value_in <= 0:
        return 0.0
    alpha = math.log(value_in / value) / math.log(shrink)
    if alpha >= 1.0:
        alpha = 0.999
    return value * vmin / (1.0 - alpha)


def _h4_d3(spec, h, T):
    """The two difference integrals for an isotropic kernel in d=3.

    With y fixed at the pole and z uniform on the unit sphere, both shifted
    arguments have the same norm sqrt(h^2 + 2s(s+h)v) with v = 1 + cos(angle),
    so each integrand reduces to a function of (s, v).
    """
    sx, sw = _geom_rule(1e-5 * T, T, 12, 4)
    vmin = 1e-18
    g1 = g2 = 0.0
    for s, ws in zip(sx, sw):
        v0 = h / (2 * (s + h))        # sign change of the first difference
        inner1 = inner2 = 0.0
        for lo, hi in ((vmin, v0), (v0, 2.0)):
            if hi <= lo:
                continue
            vx, vw = _geom_rule(lo, hi, 24, 4)
            r1 = (s + h) * np.sqrt(2 * vx)
            r2 = np.sqrt(h * h + 2 * s * (s + h) * vx)
            r4 = s * np.sqrt(2 * vx)
            f1 = _radial_cov(spec, r1)
            f2 = _radial_cov(spec, r2)
            f4 = _radial_cov(spec, r4)
            inner1 += float(np.sum(np.abs(f1 - f2) * vw))
            inner2 += float(np.sum(np.abs(f1 - 2 * f2 + f4) * vw))

        # power-law extrapolation of the integrable singularity below vmin
        def at(v):
            rr1 = (s + h) * math.sqrt(2 * v)
            rr2 = math.sqrt(h * h + 2 * s * (s + h) * v)
            rr4 = s * math.sqrt(2 * v)
            ff = _radial_cov(spec, np.array([rr1, rr2, rr4]))
            return (abs(ff[0] - ff[1]), abs(ff[0] - 2 * ff[1] + ff[2]))
        a1, a2 = at(vmin)
        b1, b2 = at(vmin / 16)
        inner1 += _sliver(a1, b1, vmin)
        inner2 += _sliver(a2, b2, vmin)

        g1 += ws * s * 0.5 * inner1
        g2 += ws * s * s * 0.5 * inner2
    return g1, g2


def _h4_d2(spec, h, T):
    """The two difference integrals for an isotropic kernel in d=2.

    Polar reduction: y = rho e1 with rho = sqrt(1 - p^2), p uniform on (0,1)
    (the radial marginal of the front density), z = (a cos phi, a sin phi)
    with a = sqrt(1 - q^2), q uniform, phi averaged over (0, pi).  Panels in
    q accumulate at the lines where one argument's norm can vanish; panels in
    psi = pi - phi accumulate geometrically at the coincidence angle.
    """
    sx, sw = _geom_rule(1e-4 * T, T, 10, 4)
    px, pw = leggauss(16)
    px = 0.5 * (px + 1.0)
    pw = 0.5 * pw
    psi, wpsi = _geom_rule(1e-12, math.pi, 36, 4)
    tt = 2.0 * np.sin(0.5 * psi) ** 2           # 1 + cos(phi), cancellation-free
    g1 = g2 = 0.0
    for s, ws in zip(sx, sw):
        for p, wp in zip(px, pw):
            rho = math.sqrt(1.0 - p * p)
            centers = [p]
            a3 = s * rho / (s + h)
            centers.append(math.sqrt(max(1.0 - a3 * a3, 0.0)))
            a2c = (s + h) * rho / s
            if a2c < 1.0:
                centers.append(math.sqrt(1.0 - a2c * a2c))
            qx, qw = _clustered_rule(0.0, 1.0, centers)
            a = np.sqrt(np.maximum(1.0 - qx * qx, 0.0))[:, None]
            w2 = (qw[:, None] * wpsi[None, :]) / math.pi
            t = tt[None, :]
            R2 = (rho - a) ** 2 + 2 * rho * a * t
            cross = 2 * s * (s + h) * rho * a * t
            f1 = _radial_cov(spec, (s + h) * np.sqrt(R2))
            f2 = _radial_cov(spec, np.sqrt(((s + h) * rho - s * a) ** 2 + cross))
            f3 = _radial_cov(spec, np.sqrt(((s + h) * a - s * rho) ** 2 + cross))
            f4 = _radial_cov(spec, s * np.sqrt(R2))
            g1 += ws * s * wp * float(np.sum(w2 * np.abs(f1 - f3)))
            g2 += ws * s * s * wp * float(np.sum(w2 * np.abs(f1 - f2 - f3 + f4)))
    return g1, g2


@lru_cache(maxsize=None)
def _mc_pairs(dim, mc, seed=77):
    """Monte Carlo pairs from G(1,dy) x G(1,dz) / mass^2 (sum of weights 1)."""
    rng = np.random.Generator(np.random.Philox(key=seed))

    def draw(k):
        if dim == 2:
            v = rng.random(k)
            r = np.sqrt(1 - v * v)
            th = rng.random(k) * 2 * math.pi
            return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)
        w = rng.standard_normal((k, 3))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        return w

    return draw(mc), draw(mc)


def _h4_mc(spec, h, T, mc, n_s=24):
    """Monte Carlo evaluation of the difference integrals (anisotropic
    kernels); returns (g1, g2, se1, se2)."""
    Y, Z = _mc_pairs(spec.dim, mc)
    base = Y + Z
    xs, wsq = leggauss(n_s)
    svals = T * (xs + 1) / 2
    sw = T * wsq / 2
    acc1 = np.zeros(mc)
    acc2 = np.zeros(mc)
    for s, w_s in zip(svals, sw):
        f00 = _cov(spec, s * base)
        f01 = _cov(spec, s * base + h * Z)
        f10 = _cov(spec, s * base + h * Y)
        f11 = _cov(spec, s * base + h * base)
        acc1 += w_s * s * np.abs(f11 - f01)
        acc2 += w_s * s * s * np.abs(f11 - f10 - f01 + f00)
    g1 = float(np.mean(acc1))
    g2 = float(np.mean(acc2))
    se1 = float(np.std(acc1) / math.sqrt(mc))
    se2 = float(np.std(acc2) / math.sqrt(mc))
    return g1, g2, se1, se2


@dataclass(frozen=True)
class H4Fit:
    b_fitted: float
    b_expected: float
    bbar_fitted: float
    bbar_expected: float
    h_values: tuple
    g1_values: tuple
    g2_values: tuple
    inconclusive: bool
    note: str = ""


def fit_h4_exponents(spec, T=1.0, h_exponents=None, mc=200_000,
                     edge_margin=0.05):
    """Fit the difference exponents b and b-bar of the noise kernel.

    g1(h) = int_0^T s ds E|f(s(Y+Z) + h(Y+Z)) - f(s(Y+Z) + hZ)|      ~ h^b
    g2(h) = int_0^T s^2 ds E|second difference of f along hY, hZ|    ~ h^bbar

    with (Y, Z) distributed as the normalized product of two unit wave
    fronts.  Isotropic kernels use deterministic graded quadrature (exact
    angular reduction in d=3, polar panels in d=2) over deep dyadic h: the
    slowly varying corrections die out only for very small h, so the headline
    exponent is the local slope at the two smallest h values.  The
    anisotropic product kernel uses Monte Carlo pairs (shallow h, standard
    errors reported, least-squares slope).  Fits within `edge_margin` of the
    top of the admissible range (1 for b, 2 for b-bar) are reported as
    inconclusive rather than pass/fail.  Accuracy of the d=2 panels degrades
    as the singularity exponent approaches 2.
    """
    if spec.dim not in (2, 3):
        raise ValueError("difference-exponent fits require dimension 2 or 3")
    aniso = spec.family == "fractional"
    if h_exponents is None:
        h_exponents = range(2, 8) if aniso else range(12, 25, 2)
    h_exponents = list(h_exponents)

    hs = np.array([2.0 ** (-k) for k in h_exponents])
    g1 = np.empty(len(hs))
    g2 = np.empty(len(hs))
    note = ""
    for i, h in enumerate(hs):
        if aniso:
            g1[i], g2[i], se1, se2 = _h4_mc(spec, h, T, mc)
            if i == len(hs) - 1:
                note = (f"Monte Carlo front pairs (n={mc}); smallest-h "
                        f"standard errors {se1:.2e}, {se2:.2e}")
        elif spec.dim == 3:
            g1[i], g2[i] = _h4_d3(spec, h, T)
        else:
            g1[i], g2[i] = _h4_d2(spec, h, T)

    if aniso or len(hs) < 2:
        b_fit, _ = fit_power_law(hs, np.maximum(g1, 1e-300))
        bb_fit, _ = fit_power_law(hs, np.maximum(g2, 1e-300))
    else:
        span = math.log(hs[-2] / hs[-1])
        b_fit = math.log(max(g1[-2], 1e-300) / max(g1[-1], 1e-300)) / span
        bb_fit = math.log(max(g2[-2], 1e-300) / max(g2[-1], 1e-300)) / span
    an = _kern.compute_analytics(spec)
    b_exp = an.b_exp if an.b_exp is not None else 1.0
    bb_exp = an.bbar_exp if an.bbar_exp is not None else 2.0
    inconcl = (abs(b_fit - 1.0) < edge_margin and b_exp >= 1.0 - edge_margin) or \
              (abs(bb_fit - 2.0) < edge_margin and bb_exp >= 2.0 - edge_margin)
    if inconcl and not note:
        note = "fit within margin of the range endpoint"
    return H4Fit(b_fitted=b_fit, b_expected=b_exp,
                 bbar_fitted=bb_fit, bbar_expected=bb_exp,
                 h_values=tuple(hs), g1_values=tuple(g1),
                 g2_values=tuple(g2), inconclusive=bool(inconcl), note=note)


# ---------------------------------------------------------------------------
# derived critical exponents
# ---------------------------------------------------------------------------

def critical_exponents(spec, gamma1, gamma2, gamma=None):
    """The exponent pair (nu1, nu2) controlling time/space regularity.

        nu1 = min(gamma, gamma1, gamma2)
        nu2 = min(nu1, (nu1 + min(b,1))/2, (1+nu)/2, (b+1)/2, bbar/2,
                  alpha~/2),   alpha~ = min(1+nu, 2) (strictly below 2
                  when nu = 1)
    """
    an = _kern.compute_analytics(spec, gamma=gamma)
    g = gamma if gamma is not None else an.gamma
    nu = an.nu
    b = an.b_exp if an.b_exp is not None else 1.0
    bb = an.bbar_exp if an.bbar_exp is not None else 2.0
    nu1 = min(g, gamma1, gamma2)
    alpha = min(1 + nu, 2.0) if nu != 1 else 2.0 - 1e-9
    nu2 = min(nu1, 0.5 * (nu1 + min(b, 1.0)), (1 + nu) / 2,
              (b + 1) / 2, bb / 2, alpha / 2)
    return {"nu1": nu1, "nu2": nu2, "alpha_tilde": alpha, "nu": nu,
            "b": b, "bbar": bb, "gamma": g}


def conclusion_exponent(spec, gamma1, gamma2):
    """The family's predicted joint space-time Holder exponent."""
    d = spec.dim
    if spec.family == "white":
        return min(0.5, gamma1, gamma2)
    if spec.family == "riesz":
        return min((2 - spec.beta) / 2, gamma1, gamma2)
    if spec.family == "bessel":
        return min((spec.kappa - d + 2) / 2, 1.0, gamma1, gamma2)
    return min(gamma1, gamma2, spec.kappa_bar,
               min(spec.hurst) - 0.5)


def hypothesis_report(spec, gamma1=1.0, gamma2=1.0, gamma_grid=None,
                      include_h4=True, h4_kwargs=None):
    """Full numerical status of the kernel hypotheses, as a plain dict.

    Covers: the basic spectral integrability constant C_mu and its
    divergence probe; the gamma-weighted constants C_mu^(gamma) over a grid
    with the detected admissible supremum; the fitted small-time rate nu;
    the fitted difference exponents (b, b-bar) when the dimension permits;
    and the derived critical/conclusion exponents.
    """
    an = _kern.compute_analytics(spec)
    out = {"kernel": repr(spec)}
    out["h0"] = {
        "c_mu": an.c_mu,
        "diverges": integral_diverges(spec, lambda r: 1.0 / (1.0 + r * r)),
    }

    if gamma_grid is None:
        gamma_grid = [round(0.05 * k, 2) for k in range(1, 20)]
    rows = []
    detected = 0.0
    for g in gamma_grid:
        w = lambda r, g=g: (1.0 + r * r) ** (g - 1.0)
        # larger truncation radius: near-critical tails decay very slowly
        div = integral_diverges(spec, w, r0=400.0)
        val = None if div else _kern.compute_analytics(spec, gamma=g).c_mu_gamma
        if not div:
            detected = max(detected, g)
        rows.append({"gamma": g, "c_mu_gamma": val, "diverges": div})
    out["h2"] = {"grid": rows, "detected_gamma_max": detected,
                 "gamma_max": an.gamma_max}

    h3 = fit_h3_rate(spec)
    out["h3"] = {"fitted_nu": h3.fitted_nu, "expected_nu": h3.expected_nu,
                 "one_sided": h3.one_sided, "fit_residual": h3.fit_residual}

    if include_h4 and spec.dim in (2, 3):
        h4 = fit_h4_exponents(spec, **(h4_kwargs or {}))
        out["h4"] = {
            "b_fitted": h4.b_fitted, "b_expected": h4.b_expected,
            "bbar_fitted": h4.bbar_fitted, "bbar_expected": h4.bbar_expected,
            "inconclusive": h4.inconclusive, "note": h4.note,
            "h_values": list(h4.h_values),
            "g1_values": list(h4.g1_values), "g2_values": list(h4.g2_values),
        }
    else:
        out["h4"] = {"skipped": "difference exponents need dimension 2 or 3"}

    out["exponents"] = critical_exponents(spec, gamma1, gamma2)
    out["conclusion_exponent"] = conclusion_exponent(spec, gamma1, gamma2)
    return out


def integral_diverges(spec, w, r0=50.0, factor=4.0, tol=0.10):
    """Probe whether (2 pi)^{-d} int g(zeta) w(|zeta|) dzeta diverges.

    Compares the truncation at radius r0 with the one at factor*r0; a
    relative change above `tol` flags divergence.
    """
    i1 = _kern.spectral_integral(spec, w, rmax=r0)
    i2 = _kern.spectral_integral(spec, w, rmax=factor * r0)
    if i1 == 0:
        return i2 != 0
    return abs(i2 - i1) / abs(i1) > tol
