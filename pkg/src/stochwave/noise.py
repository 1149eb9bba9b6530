"""
stochwave.noise
===============

Band-limited spatially homogeneous Gaussian noise on a periodic grid.

The driving noise is white in time with spatial covariance f whose spectral
measure is mu(dzeta) = g(zeta) dzeta.  On the torus of side L with n points
per axis, the increment over a time step dt is synthesized in Fourier space:

    W = Re( n^d ifftn(c) ),   c_k = (xi_k + i xi'_k) sqrt( dt g(zeta_k) / L^d )

with xi, xi' independent standard normals per mode.  This gives exactly

    cov( W(x), W(y) ) = dt L^{-d} sum_k g(zeta_k) cos( zeta_k . (x - y) ),

the band-limited periodization of dt * f.  Modes where g is singular (the
origin for the Riesz family, the axes for the fractional family) carry the
average of g over their frequency cell instead of a pointwise value.

Randomness is counter-based: every draw is keyed by (seed, path, step), so
replicas and restarts reproduce bit-identically regardless of call order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels as _kern

__all__ = ["GridSpec", "make_rng", "mode_weights", "sample_increment",
           "sample_white", "covariance_model"]


@dataclass(frozen=True)
class GridSpec:
    """Periodic spatial grid: `n` points per axis on a torus of side `length`."""

    dim: int
    n: int
    length: float
    dt: float

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError("dim must be 1, 2 or 3")
        if self.n < 2:
            raise ValueError("need at least 2 points per axis")
        if self.length <= 0 or self.dt <= 0:
            raise ValueError("length and dt must be positive")

    @property
    def h(self):
        """Grid spacing."""
        return self.length / self.n

    @property
    def shape(self):
        return (self.n,) * self.dim

    def axis(self):
        """Coordinates along one axis, [0, length)."""
        return np.arange(self.n) * self.h

    def mesh(self):
        """Coordinate array of shape (n, ..., n, dim)."""
        ax = self.axis()
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack(grids, axis=-1)

    def wavenumbers(self):
        """Angular wavenumbers 2 pi k / length along one axis (fft order)."""
        return 2 * math.pi * np.fft.fftfreq(self.n, d=self.h)


def make_rng(seed, path=0, step=0):
    """Counter-based generator keyed by (seed, path, step)."""
    key = np.array([seed, (path << 32) + step], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@lru_cache(maxsize=32)
def mode_weights(grid, spec):
    """Spectral weights g(zeta_k) on the grid modes, with cell-averaged values
    substituted wherever g is singular."""
    if spec.dim != grid.dim:
        raise ValueError("kernel and grid dimension differ")
    k = grid.wavenumbers()
    half = math.pi / grid.length          # half-width of a frequency cell

    if spec.family == "fractional":
        g = np.ones(grid.shape)
        for i, h in enumerate(spec.hurst):
            with np.errstate(divide="ignore"):
                w = _kern.fractional_axis_constant(h) * np.abs(k) ** (1 - 2 * h)
            w[k == 0] = _kern.fractional_axis_cell_average(h, half)
            shape = [1] * grid.dim
            shape[i] = grid.n
            g = g * w.reshape(shape)
        return g

    mats = np.meshgrid(*([k] * grid.dim), indexing="ij")
    pts = np.stack(mats, axis=-1)
    r = np.linalg.norm(pts, axis=-1)
    if spec.family == "white":
        return np.ones(grid.shape)
    if spec.family == "bessel":
        return _kern.bessel_constant(spec.dim, spec.kappa) * (1 + r * r) ** (-spec.kappa / 2)
    g = np.zeros(grid.shape)
    nz = r > 0
    g[nz] = _kern.riesz_constant(spec.dim, spec.beta) * r[nz] ** (spec.beta - spec.dim)
    g[~nz] = _kern.cell_average(spec, half)
    return g


def sample_increment(grid, spec, seed, path=0, step=0):
    """One noise increment W(step dt, .) - W((step-1) dt, .) on the grid."""
    g = mode_weights(grid, spec)
    rng = make_rng(seed, path, step)
    xi = rng.standard_normal((2,) + grid.shape)
    c = (xi[0] + 1j * xi[1]) * np.sqrt(grid.dt * g / grid.length ** grid.dim)
    field = np.real(np.fft.ifftn(c) * grid.n ** grid.dim)
    return field


def sample_white(grid, seed, path=0, step=0):
    """Space-time white noise increment: iid N(0, dt / h^d) per grid cell."""
    rng = make_rng(seed, path, step)
    sd = math.sqrt(grid.dt / grid.h ** grid.dim)
    return sd * rng.standard_normal(grid.shape)


def covariance_model(grid, spec):
    """Exact covariance of the sampled field at every lattice lag.

    Returns C with C[j] = cov(W(x_0), W(x_j)); equals the band-limited
    periodization of dt * f.
    """
    g = mode_weights(grid, spec)
    c = np.real(np.fft.ifftn(g) * grid.n ** grid.dim)
    return grid.dt * c / grid.length ** grid.dim
