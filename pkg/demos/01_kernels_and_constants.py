"""Kernel families and their analytic constants.

Each noise kernel is described by a spectral density g and (except for the
anisotropic product family) a radial covariance density f.  The constant
C_mu = (2 pi)^-d int g(zeta) / (1 + |zeta|^2) dzeta decides whether the
stochastic convolution against the wave kernel is finite at all; the
exponents nu, b, b-bar below govern time regularity and the difference
estimates used by the Holder theory.
"""
from stochwave import kernels as K

SPECS = [
    ("space-time white (d=1)", K.white_noise()),
    ("Riesz |x|^-0.5, d=2", K.riesz(2, 0.5)),
    ("Riesz |x|^-1, d=2", K.riesz(2, 1.0)),
    ("Riesz |x|^-1, d=3", K.riesz(3, 1.0)),
    ("Bessel kappa=2, d=2", K.bessel(2, 2.0)),
    ("Bessel kappa=3, d=3", K.bessel(3, 3.0)),
    ("fractional H=(3/4, 3/4)", K.fractional(0.75, 0.75)),
]

print(f"{'kernel':28s} {'C_mu':>10s} {'gamma_max':>10s} {'nu':>6s} "
      f"{'b':>6s} {'bbar':>6s}")
for name, spec in SPECS:
    an = K.compute_analytics(spec)
    b = "-" if an.b_exp is None else f"{an.b_exp:.3g}"
    bb = "-" if an.bbar_exp is None else f"{an.bbar_exp:.3g}"
    print(f"{name:28s} {an.c_mu:10.6f} {an.gamma_max:10.3g} {an.nu:6.3g} "
          f"{b:>6s} {bb:>6s}")

print()
print("The admissible Holder parameter gamma must stay below gamma_max;")
print("at gamma_max the weighted constant C_mu^(gamma) diverges:")
spec = K.riesz(2, 1.0)
for gamma in (0.2, 0.35, 0.45, 0.49):
    an = K.compute_analytics(spec, gamma=gamma)
    print(f"  gamma = {gamma:4.2f}: C_mu^(gamma) = {an.c_mu_gamma:10.4f}")
