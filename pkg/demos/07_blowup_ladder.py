"""Truncation ladder for superlinear coefficients.

With drift b(z) = theta2 z ln|z| and diffusion sigma(z) = 1 + 1.5 z
ln^{1/4}|z| the solution is only defined up to the exit time of the
truncated dynamics.  Clamping the coefficients at +-N and recording the
first time the sup of |u_N| reaches N gives exit times tau_N that are
nondecreasing in N along every path (the truncated systems agree until the
lower threshold is hit), so P(tau_N < T) falls as the ladder rises; if it
falls to zero the path survives, which is what the drift-domination
condition guarantees.
"""
import numpy as np

from stochwave import kernels as K
from stochwave import model as M
from stochwave import noise as N
from stochwave import solver as S

grid = N.GridSpec(dim=1, n=128, length=6.0, dt=1.0 / 32)
pair = M.superlinear(theta2=4.0, delta=1.0, sigma2=1.5, a=0.25, sigma1=1.0)
print("drift-domination verdict:",
      M.check_domination(pair, dim=1))

levels = [1.5, 2.2, 3.0, 4.5]
recs, tau = S.blowup_experiment(grid, K.white_noise(), pair,
                                M.InitialData.zero(1), T=1.5,
                                levels=levels, replicas=100, seed=5,
                                radius=1.5)
print(f"\nper-path monotonicity of tau_N: "
      f"{bool(np.all(np.diff(tau, axis=1) >= 0))} (exact by construction)")
print(f"{'N':>6s} {'hits':>6s} {'P(tau_N < T)':>14s} {'95% CI':>22s}")
for r in recs:
    print(f"{r.threshold:6.1f} {r.hits:6d} {r.p_hat:14.2f}     "
          f"[{r.ci_lo:.3f}, {r.ci_hi:.3f}]")
