"""Numerical status of the kernel hypotheses for one kernel.

For a chosen kernel this verifies, numerically: integrability of the
spectral density against (1+|zeta|^2)^{-1} (and against the gamma-weighted
version over a grid of gamma); the small-time rate nu of the double
integral J(t); and the difference exponents (b, b-bar) behind the optimal
Holder theory.  The report ends with the predicted joint space-time Holder
exponent for given data regularity (gamma1, gamma2).
"""
from stochwave import hypcheck as H
from stochwave import kernels as K

spec = K.riesz(3, 1.0)
rep = H.hypothesis_report(spec, gamma1=1.0, gamma2=1.0,
                          gamma_grid=[0.1, 0.25, 0.4, 0.49],
                          h4_kwargs={"h_exponents": range(16, 25, 4)})

print("kernel:", rep["kernel"])
print(f"C_mu = {rep['h0']['c_mu']:.6f}, diverges: {rep['h0']['diverges']}")
print("\ngamma-weighted constants:")
for row in rep["h2"]["grid"]:
    val = "divergent" if row["diverges"] else f"{row['c_mu_gamma']:.4f}"
    print(f"  gamma = {row['gamma']:.2f}: {val}")
print(f"admissible sup detected {rep['h2']['detected_gamma_max']} "
      f"(theory {rep['h2']['gamma_max']})")
h3 = rep["h3"]
print(f"\nsmall-time rate nu: fitted {h3['fitted_nu']:.3f}, "
      f"expected {h3['expected_nu']:g}")
h4 = rep["h4"]
print(f"difference exponents: b fitted {h4['b_fitted']:.3f} "
      f"(expected {h4['b_expected']:g}), b-bar fitted "
      f"{h4['bbar_fitted']:.3f} (expected {h4['bbar_expected']:g})")
print(f"\ncritical exponents: {rep['exponents']}")
print(f"predicted joint Holder exponent: {rep['conclusion_exponent']:g}")
