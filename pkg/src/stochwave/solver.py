"""
stochwave.solver
================

Time integration of the stochastic wave equation on the periodic grid.

The workhorse is a semi-spectral trigonometric integrator: the free wave
group is applied exactly on the Fourier modes,

    u^(t+h) = cos(h w) u^ + w^{-1} sin(h w) [ v^ + F(b(u) h + sigma(u) dW) ]
    v^(t+h) = -w sin(h w) u^ + cos(h w) [ v^ + F(b(u) h + sigma(u) dW) ]

with w = |zeta_k| (and w^{-1} sin(h w) -> h at w = 0).  For d=1 an
independent mild-form scheme (`mild_solve`) evaluates the Duhamel integrals
directly with exact cell integrals of G; it cross-checks the integrator.

All randomness is counter-based (seed, path, step) via stochwave.noise, so a
replica is reproducible independent of scheduling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import model as _model
from . import noise as _noise

__all__ = ["Propagator", "PathResult", "run_path", "mild_solve",
           "picard_solve", "BlowupRecord", "blowup_experiment",
           "wilson_interval", "observation_mask"]


class Propagator:
    """Precomputed free-wave group factors for one grid and step size."""

    def __init__(self, grid, dt=None):
        self.grid = grid
        self.dt = grid.dt if dt is None else float(dt)
        k = grid.wavenumbers()
        mats = np.meshgrid(*([k] * grid.dim), indexing="ij")
        self.omega = np.sqrt(sum(m * m for m in mats))
        self.cos, self.sinc, self.msin = self.factors(self.dt)

    def factors(self, t):
        """cos(t w), w^{-1} sin(t w), -w sin(t w) on the mode grid."""
        w = self.omega
        c = np.cos(t * w)
        s = t * np.sinc(t * w / math.pi)          # sin(t w)/w, -> t at w=0
        m = -w * np.sin(t * w)
        return c, s, m

    def centered_mesh(self):
        """Grid coordinates shifted so the torus is centred at the origin."""
        return self.grid.mesh() - self.grid.length / 2

    def initial_modes(self, init):
        pts = self.centered_mesh().reshape(-1, self.grid.dim)
        u0 = init.u0(pts).reshape(self.grid.shape)
        v0 = init.v0(pts).reshape(self.grid.shape)
        return np.fft.fftn(u0), np.fft.fftn(v0)

    def free_field(self, init, t):
        """Band-limited free-wave solution at time t on the grid."""
        uh, vh = self.initial_modes(init)
        c, s, _ = self.factors(t)
        return np.real(np.fft.ifftn(c * uh + s * vh))


@dataclass
class PathResult:
    """One trajectory: saved fields, running sup, and blow-up bookkeeping."""

    times: np.ndarray
    fields: np.ndarray
    sup_abs: float
    blowup_time: float | None
    u_final: np.ndarray
    v_final: np.ndarray
    point_values: np.ndarray | None = None


def observation_mask(grid, radius):
    """Boolean grid mask of the centred observation ball B(0, radius)."""
    mesh = grid.mesh() - grid.length / 2
    return np.sqrt(np.sum(mesh * mesh, axis=-1)) <= radius


def run_path(grid, spec, pair, init, T, seed=0, path=0, save_times=(),
             threshold=None, track_point=None, radius=None):
    """Integrate one replica up to time T with the trigonometric scheme.

    save_times are snapped to the nearest step.  If `threshold` is given the
    integration stops once the running sup of |u| exceeds it (or becomes
    non-finite) and the crossing time is reported.  The sup is taken over
    the centred ball B(0, radius) when `radius` is given, else the whole
    grid.  `track_point` (a grid index tuple) records u at that point after
    every step.
    """
    dt = grid.dt
    steps = int(round(T / dt))
    prop = Propagator(grid)
    uh, vh = prop.initial_modes(init)
    u = np.real(np.fft.ifftn(uh))
    mask = observation_mask(grid, radius) if radius is not None else None

    def supnorm(arr):
        vals = arr[mask] if mask is not None else arr
        m = float(np.max(np.abs(vals)))
        return m if math.isfinite(m) else math.inf

    want = {}
    for t in save_times:
        want.setdefault(min(max(int(round(t / dt)), 0), steps), []).append(t)
    saved_steps, fields = [], []
    if 0 in want:
        saved_steps.append(0)
        fields.append(u.copy())
    trace = [] if track_point is not None else None
    sup_abs = supnorm(u)
    blowup_time = None

    for step in range(1, steps + 1):
        w = _noise.sample_increment(grid, spec, seed, path, step)
        forcing = np.fft.fftn(pair.b(u) * dt + pair.sigma(u) * w)
        uh, vh = (prop.cos * uh + prop.sinc * (vh + forcing),
                  prop.msin * uh + prop.cos * (vh + forcing))
        u = np.real(np.fft.ifftn(uh))
        if not np.all(np.isfinite(u)):
            m = math.inf
        else:
            m = supnorm(u)
        sup_abs = max(sup_abs, m)
        if trace is not None:
            trace.append(u[track_point])
        if step in want:
            saved_steps.append(step)
            fields.append(u.copy())
        if (threshold is not None and m > threshold) or m == math.inf:
            blowup_time = step * dt
            break

    v = np.real(np.fft.ifftn(vh))
    return PathResult(
        times=np.array(saved_steps, dtype=float) * dt,
        fields=np.array(fields) if fields else np.empty((0,) + grid.shape),
        sup_abs=sup_abs,
        blowup_time=blowup_time,
        u_final=u, v_final=v,
        point_values=np.array(trace) if trace is not None else None)


# ---------------------------------------------------------------------------
# d=1 mild-form cross-check
# ---------------------------------------------------------------------------

def _cell_kernel(grid, tau):
    """Circulant weights of the exact operator [G(tau) * .] on cell averages.

    k[l] = (1/2) |(-tau, tau) ^ cell_l| / h gives [G*phi]_i = h sum_l k_l
    phi_{i-l}; exact for piecewise-constant phi.  Needs tau <= L/2 - h/2.
    """
    n, h, L = grid.n, grid.h, grid.length
    if tau > L / 2 - h / 2:
        raise ValueError("support of G(tau) wraps around the torus")
    centers = np.arange(n) * h
    centers = (centers + L / 2) % L - L / 2      # wrapped to [-L/2, L/2)
    lo = np.maximum(centers - h / 2, -tau)
    hi = np.minimum(centers + h / 2, tau)
    return 0.5 * np.maximum(hi - lo, 0.0)


def mild_solve(grid, spec, pair, init, T, seed=0, path=0):
    """Direct evaluation of the mild formulation for d=1.

    Exact cell integrals of G for the spatial convolutions, trapezoid rule in
    time for the drift, left-point rule for the noise, spectral free-wave
    term.  Returns the field history, shape (steps+1, n).
    """
    if grid.dim != 1:
        raise ValueError("the mild solver is implemented for d=1")
    dt = grid.dt
    steps = int(round(T / dt))
    prop = Propagator(grid)
    uh0, vh0 = prop.initial_modes(init)

    khat = [None]
    for m in range(1, steps + 1):
        khat.append(np.fft.fft(_cell_kernel(grid, m * dt)))

    n = grid.n
    hist = np.empty((steps + 1, n))
    hist[0] = np.real(np.fft.ifft(uh0))
    bvals = np.empty((steps + 1, n))
    bvals[0] = pair.b(hist[0])
    noises = np.empty((steps, n))
    for j in range(steps):
        noises[j] = _noise.sample_increment(grid, spec, seed, path, j + 1)

    for i in range(1, steps + 1):
        c, s, _ = prop.factors(i * dt)
        acc_hat = np.zeros(n, dtype=complex)
        for j in range(i):
            # trapezoid in time for the drift (the j=i endpoint has G(0)=0),
            # left-point rule for the stochastic term
            wj = 0.5 * dt if j == 0 else dt
            f = bvals[j] * wj + pair.sigma(hist[j]) * noises[j]
            acc_hat += khat[i - j] * np.fft.fft(f)
        hist[i] = np.real(np.fft.ifft(c * uh0 + s * vh0 + acc_hat))
        bvals[i] = pair.b(hist[i])
    return hist


def picard_solve(grid, spec, pair, init, T, iterations, seed=0, path=0):
    """Successive-approximation solution of the mild formulation (d=1).

    u^0 is the free field; u^{n+1} = free field + Duhamel drift and noise
    convolutions of G against the coefficients evaluated on u^n, reusing the
    same noise realization each iteration.  Returns all iterates, shape
    (iterations + 1, steps + 1, n).  The O(steps^2) history convolution is
    capped at 256 space points x 256 time steps.
    """
    if grid.dim != 1:
        raise ValueError("the successive-approximation solver needs d=1")
    dt = grid.dt
    steps = int(round(T / dt))
    n = grid.n
    if n > 256 or steps > 256:
        raise ValueError("history convolution cap exceeded (256 x 256)")
    prop = Propagator(grid)
    uh0, vh0 = prop.initial_modes(init)

    free = np.empty((steps + 1, n))
    khat = [None]
    for m in range(0, steps + 1):
        c, s, _ = prop.factors(m * dt)
        free[m] = np.real(np.fft.ifft(c * uh0 + s * vh0))
        if m >= 1:
            khat.append(np.fft.fft(_cell_kernel(grid, m * dt)))
    noises = np.empty((steps, n))
    for j in range(steps):
        noises[j] = _noise.sample_increment(grid, spec, seed, path, j + 1)

    iterates = np.empty((iterations + 1, steps + 1, n))
    iterates[0] = free
    prev = free
    for it in range(1, iterations + 1):
        fhat = np.empty((steps, n), dtype=complex)
        for j in range(steps):
            wj = 0.5 * dt if j == 0 else dt
            fhat[j] = np.fft.fft(pair.b(prev[j]) * wj
                                 + pair.sigma(prev[j]) * noises[j])
        cur = free.copy()
        for i in range(1, steps + 1):
            acc = np.zeros(n, dtype=complex)
            for j in range(i):
                acc += khat[i - j] * fhat[j]
            cur[i] += np.real(np.fft.ifft(acc))
        iterates[it] = cur
        prev = cur
    return iterates


# ---------------------------------------------------------------------------
# blow-up ladder experiment
# ---------------------------------------------------------------------------

def wilson_interval(hits, n, z=1.96):
    """Wilson score interval for a binomial proportion."""
    if n == 0:
        return 0.0, 1.0
    p = hits / n
    den = 1 + z * z / n
    mid = (p + z * z / (2 * n)) / den
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den
    return max(0.0, mid - half), min(1.0, mid + half)


@dataclass(frozen=True)
class BlowupRecord:
    threshold: float
    hits: int
    replicas: int
    p_hat: float
    ci_lo: float
    ci_hi: float


def blowup_experiment(grid, spec, pair, init, T, levels, replicas, seed=0,
                      radius=None):
    """Empirical P(tau_N < T) over an ascending ladder of truncation levels.

    For each level N the coefficients are clamped at +-N and tau_N is the
    first time the running sup of |u_N| over the observation ball reaches N
    (T if it never does).  Levels share replica seeds, and the truncated
    systems coincide until the lower level is hit, so tau_N is nondecreasing
    in N along every path exactly, not just statistically.

    Returns (records, tau) with tau of shape (replicas, len(levels)).
    """
    levels = sorted(float(x) for x in levels)
    m = len(levels)
    tau = np.full((replicas, m), float(T))
    for r in range(replicas):
        for i, lev in enumerate(levels):
            res = run_path(grid, spec, _model.truncate(pair, lev), init, T,
                           seed=seed, path=r, threshold=lev, radius=radius)
            if res.blowup_time is not None:
                tau[r, i] = res.blowup_time
            elif i + 1 < m:
                # never hit this level: higher levels cannot hit either
                break
    records = []
    for i, lev in enumerate(levels):
        hits = int(np.sum(tau[:, i] < T))
        lo, hi = wilson_interval(hits, replicas)
        records.append(BlowupRecord(lev, hits, replicas,
                                    hits / replicas, lo, hi))
    return records, tau
