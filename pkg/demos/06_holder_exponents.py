"""Holder regularity of the solution from structure functions.

For d=1 white noise with zero data the solution is Holder-1/2 minus epsilon
in space and time; the second-order structure function S_2(r) therefore
scales like r^{2 x 0.5}.  This demo estimates the spatial and temporal
exponents from a modest ensemble (the acceptance suite runs the full-size
version).
"""
from stochwave import kernels as K
from stochwave import model as M
from stochwave import noise as N
from stochwave import stats as ST

grid = N.GridSpec(dim=1, n=2048, length=8.0, dt=1.0 / 128)
pair = M.lipschitz(0.0, 0.0, c_sigma=1.0)     # b = 0, sigma = 1
init = M.InitialData.zero(1)

fields, traces = ST.sample_final_fields(grid, K.white_noise(), pair, init,
                                        1.0, replicas=200, seed=21,
                                        track_point=(grid.n // 2,))
sp = ST.estimate_holder(fields, grid.h, [4, 8, 16, 32], target=0.5)
tm = ST.estimate_holder(traces, grid.dt, [2, 4, 8, 16], target=0.5,
                        direction="time")
for fit in (sp, tm):
    print(f"{fit.direction:5s}: fitted exponent {fit.exponent:.3f} "
          f"(target {fit.target}), fit residual {fit.fit_residual:.2e}")
    for r, s in zip(fit.lags, fit.s_values):
        print(f"   S_2({r:.5f}) = {s:.6e}")
