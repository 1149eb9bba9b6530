"""
stochwave: numerical experiments for stochastic wave equations driven by
spatially homogeneous Gaussian noise, with superlinearly growing drift and
diffusion coefficients.

Modules
-------
kernels   noise covariance/spectral kernels and their analytic constants
greens    wave fundamental solution, quadratures, cross-route integrals
noise     spectral synthesis of the driving noise on a periodic grid
model     coefficient pairs, truncation, domination, initial data
solver    trigonometric integrator, mild/Picard oracles, blow-up ladders
stats     Monte Carlo moments, envelopes, structure functions, Holder fits
hypcheck  numerical verification of the kernel hypotheses and exponents
config    TOML experiment configuration and validation
cli       the `stochwave` command-line interface
"""

__version__ = "0.1.0"

from . import (cli, config, greens, hypcheck, kernels, model, noise, solver,
               stats)
from .config import SimConfig, load_config, validate
from .kernels import (KernelSpec, bessel, compute_analytics, fractional,
                      riesz, white_noise)
from .model import (CoefficientPair, InitialData, check_domination,
                    lipschitz, superlinear, truncate)
from .noise import GridSpec
from .solver import (blowup_experiment, mild_solve, picard_solve, run_path)
from .stats import (estimate_holder, estimate_moments, moment_table,
                    sample_fields, sample_point_values)

__all__ = [
    "__version__",
    "cli", "config", "greens", "hypcheck", "kernels", "model", "noise",
    "solver", "stats",
    "SimConfig", "load_config", "validate",
    "KernelSpec", "bessel", "compute_analytics", "fractional", "riesz",
    "white_noise",
    "CoefficientPair", "InitialData", "check_domination", "lipschitz",
    "superlinear", "truncate",
    "GridSpec",
    "blowup_experiment", "mild_solve", "picard_solve", "run_path",
    "estimate_holder", "estimate_moments", "moment_table", "sample_fields",
    "sample_point_values",
]
