"""
stochwave.stats
===============

Monte Carlo estimation on top of the path solver: moment estimates with
confidence intervals, comparison against the theoretical growth envelope,
and Holder-exponent estimation from structure functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import model as _model
from . import solver as _solver

__all__ = [
    "sample_point_values", "sample_fields", "MomentEstimate", "moment_table",
    "MomentReport", "estimate_moments",
    "EnvelopeCheck", "check_growth_envelope",
    "structure_function", "fit_power_law", "HolderFit", "estimate_holder",
    "sample_final_fields",
]


def sample_point_values(grid, spec, pair, init, T, times, replicas, seed=0,
                        point=None):
    """Run `replicas` paths, record u at one grid point at the given times.

    Returns an array of shape (replicas, len(times)).  The default point is
    the centre of the torus (where centred initial data peaks).
    """
    if point is None:
        point = (grid.n // 2,) * grid.dim
    out = np.empty((replicas, len(times)))
    order = np.argsort(times)
    for r in range(replicas):
        res = _solver.run_path(grid, spec, pair, init, max(times), seed=seed,
                               path=r, save_times=tuple(times))
        for j, t in enumerate(times):
            i = int(np.argmin(np.abs(res.times - t)))
            out[r, j] = res.fields[i][point]
    del order
    return out


def sample_final_fields(grid, spec, pair, init, T, replicas, seed=0,
                        track_point=None):
    """Run `replicas` paths; return fields at time T, shape (replicas, ...).

    If `track_point` is given, also return the per-step traces at that point,
    shape (replicas, steps).
    """
    fields = np.empty((replicas,) + grid.shape)
    traces = None
    for r in range(replicas):
        res = _solver.run_path(grid, spec, pair, init, T, seed=seed, path=r,
                               save_times=(T,), track_point=track_point)
        fields[r] = res.fields[-1]
        if track_point is not None:
            if traces is None:
                traces = np.empty((replicas, len(res.point_values)))
            traces[r] = res.point_values
    if track_point is not None:
        return fields, traces
    return fields


def sample_fields(grid, spec, pair, init, T, times, replicas, seed=0):
    """Run `replicas` paths, recording the full field at the given times.

    Returns an array of shape (replicas, len(times), *grid.shape).
    """
    times = tuple(sorted(times))
    out = np.empty((replicas, len(times)) + grid.shape)
    for r in range(replicas):
        res = _solver.run_path(grid, spec, pair, init, max(times), seed=seed,
                               path=r, save_times=times)
        for j, t in enumerate(times):
            i = int(np.argmin(np.abs(res.times - t)))
            out[r, j] = res.fields[i]
    return out


@dataclass(frozen=True)
class MomentEstimate:
    t: float
    p: float
    estimate: float
    ci_lo: float
    ci_hi: float


def moment_table(values, times, ps, n_boot=400, seed=0):
    """E|u(t, x0)|^p estimates with bootstrap percentile intervals.

    values: (replicas, len(times)) array from `sample_point_values`.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    reps = values.shape[0]
    out = []
    for j, t in enumerate(times):
        col = np.abs(values[:, j])
        for p in ps:
            amp = col ** p
            est = float(np.mean(amp))
            idx = rng.integers(0, reps, size=(n_boot, reps))
            boots = np.mean(amp[idx], axis=1)
            lo, hi = np.percentile(boots, [2.5, 97.5])
            out.append(MomentEstimate(float(t), float(p), est,
                                      float(lo), float(hi)))
    return out


@dataclass(frozen=True)
class MomentReport:
    """Sup-over-space moment estimates at a list of times, with the
    exponentially weighted seminorm estimate N_{alpha,p}."""

    p: float
    alpha: float
    times: tuple
    sup_moments: tuple          # MomentEstimate per time, sup_x E|u(t,x)|^p
    n_alpha_p: float


def estimate_moments(fields, times, p, alpha=0.0, mask=None, n_boot=200,
                     seed=0):
    """sup_x E|u(t,x)|^p with bootstrap CIs, and N_{alpha,p}.

    fields: (replicas, len(times), *shape) from `sample_fields`; `mask`
    restricts the sup to an observation window (boolean grid array).
    """
    fields = np.asarray(fields)
    reps = fields.shape[0]
    if reps < 30:
        raise ValueError("need at least 30 replicas for moment estimation")
    rng = np.random.Generator(np.random.Philox(key=seed))
    flat = np.abs(fields).reshape(reps, len(times), -1) ** p
    if mask is not None:
        flat = flat[:, :, np.asarray(mask).ravel()]
    ests = []
    for j, t in enumerate(times):
        amp = flat[:, j]
        est = float(np.max(np.mean(amp, axis=0)))
        idx = rng.integers(0, reps, size=(n_boot, reps))
        boots = np.max(np.mean(amp[idx], axis=1), axis=-1)
        lo, hi = np.percentile(boots, [2.5, 97.5])
        ests.append(MomentEstimate(float(t), float(p), est,
                                   float(lo), float(hi)))
    n_alpha = max(math.exp(-alpha * e.t) * e.estimate ** (1.0 / p)
                  for e in ests)
    return MomentReport(p=float(p), alpha=float(alpha),
                        times=tuple(float(t) for t in times),
                        sup_moments=tuple(ests), n_alpha_p=float(n_alpha))


@dataclass(frozen=True)
class EnvelopeCheck:
    passed: bool
    fitted_rate: float
    rate_bound: float
    p: float
    note: str = ""


def check_growth_envelope(report, dim, L_b, L_sigma, c_mu=None, margin=0.15):
    """One-sided check of the exponential moment growth rate.

    Fits the slope of t -> log sup_x E|u(t,x)|^p over the late window
    [T/4, T] and passes when it does not exceed 2 p sqrt(L(b)) times
    (1 + margin).  Refuses moment orders outside the admissible interval
    (the envelope theorem does not cover them).
    """
    p = report.p
    lo_p, hi_p = _model.admissible_p(dim, L_b, L_sigma, c_mu)
    if not lo_p <= p <= hi_p:
        raise ValueError(
            f"moment order p={p} outside the admissible interval "
            f"[{lo_p:.3g}, {hi_p:.3g}] of the growth envelope")
    ts = np.array(report.times)
    vals = np.array([max(e.estimate, 1e-300) for e in report.sup_moments])
    top = ts.max()
    sel = ts >= top / 4
    if np.sum(sel) < 2:
        raise ValueError("need at least two time points in [T/4, T]")
    rate = float(np.polyfit(ts[sel], np.log(vals[sel]), 1)[0])
    bound = 2 * p * math.sqrt(L_b)
    ok = rate <= bound * (1.0 + margin)
    return EnvelopeCheck(bool(ok), rate, bound, p)


# ---------------------------------------------------------------------------
# structure functions and Holder exponents
# ---------------------------------------------------------------------------

def structure_function(fields, spacing, lags, p=2.0, axis=-1):
    """S_p(r) = E|u(x + r) - u(x)|^p over periodic shifts along one axis.

    fields: (replicas, n, ..., n); lags are integer grid offsets.
    Returns (r_values, S_p values).
    """
    fields = np.asarray(fields)
    rs, svals = [], []
    for lag in lags:
        diff = np.roll(fields, -int(lag), axis=axis) - fields
        rs.append(lag * spacing)
        svals.append(float(np.mean(np.abs(diff) ** p)))
    return np.array(rs), np.array(svals)


def fit_power_law(r, s):
    """Least-squares slope of log s against log r; returns (slope, resid)."""
    x, y = np.log(r), np.log(s)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - slope * x - intercept) ** 2)))
    return float(slope), resid


@dataclass(frozen=True)
class HolderFit:
    exponent: float
    target: float
    p: float
    direction: str
    lags: tuple
    s_values: tuple
    fit_residual: float


def estimate_holder(fields, spacing, lags, target, p=2.0, axis=-1,
                    direction="space"):
    """Holder exponent from the structure-function scaling S_p(r) ~ r^{p gamma}."""
    lags = list(lags)
    if len(lags) < 4 or max(lags) < 4 * min(lags):
        raise ValueError("need at least 4 lags spanning at least 2 octaves")
    r, s = structure_function(fields, spacing, lags, p=p, axis=axis)
    slope, resid = fit_power_law(r, s)
    return HolderFit(exponent=slope / p, target=float(target), p=float(p),
                     direction=direction, lags=tuple(float(x) for x in r),
                     s_values=tuple(float(x) for x in s), fit_residual=resid)
