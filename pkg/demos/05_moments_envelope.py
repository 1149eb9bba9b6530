"""Moment growth against the exponential envelope.

For Lipschitz coefficients the p-th moments of the solution, sup over
space, grow at most like exp(2 p sqrt(L(b)) t) for p in an admissible range
tied to the ratio of the drift and diffusion Lipschitz constants.  The
constant in front is not reproducible (the theory does not pin it down),
so the check is one-sided: the fitted growth RATE must stay under the
theoretical rate.
"""
from stochwave import kernels as K
from stochwave import model as M
from stochwave import noise as N
from stochwave import solver as S
from stochwave import stats as ST

grid = N.GridSpec(dim=1, n=128, length=8.0, dt=1.0 / 32)
L_b, L_sigma = 1.0, 0.3
pair = M.lipschitz(L_b, L_sigma, c_sigma=1.0)
init = M.InitialData.zero(1)
times = [0.25, 0.5, 0.75, 1.0]

print("admissible moment orders:", M.admissible_p(1, L_b, L_sigma))
fields = ST.sample_fields(grid, K.white_noise(), pair, init, 1.0, times,
                          replicas=200, seed=11)
mask = S.observation_mask(grid, 1.5)
rep = ST.estimate_moments(fields, times, p=2.0, alpha=1.0, mask=mask)
print(f"\n{'t':>6s} {'sup_x E|u|^2':>14s} {'95% CI':>24s}")
for e in rep.sup_moments:
    print(f"{e.t:6.2f} {e.estimate:14.5f}     [{e.ci_lo:.5f}, {e.ci_hi:.5f}]")
print(f"weighted seminorm N_alpha_p (alpha=1): {rep.n_alpha_p:.5f}")

chk = ST.check_growth_envelope(rep, dim=1, L_b=L_b, L_sigma=L_sigma)
print(f"\nfitted log-moment slope {chk.fitted_rate:.3f} vs theoretical "
      f"rate 2 p sqrt(L_b) = {chk.rate_bound:.3f}: "
      f"{'PASS' if chk.passed else 'FAIL'}")
