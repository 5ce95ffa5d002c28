"""Closed form versus truncated-Fock steady state.

The closed form is exact only for an infinite number of excitations 2s;
at fixed physical drive and damping its error falls off as 1/2s.
"""
import warnings

import numpy as np

import kerrscope as ks

warnings.simplefilter("ignore", ks.ValidityWarning)

p = ks.ModelParams.from_scaled(-1.94, 1.0, 0.06, 1e-3, two_s=50)
rho = ks.steady_state(p, ks.FockConfig(dim=20))
exact = ks.observables_full(rho)[2].probs

print(" 2s    max |P_q(closed form) - P_q(master eq.)|")
for two_s in (50, 100, 200, 400, 800):
    approx = ks.photon_distribution(ks.scale(p, two_s)).probs[:exact.size]
    print(f"{two_s:4d}   {np.max(np.abs(approx - exact)):.2e}")

# whole Fig. 1a sweep on a coarser grid
grid = ks.Grid(-7.0, 1.0, 161)
ana = ks.sweep_detuning(p, grid, "analytic")
num = ks.sweep_detuning(p, grid, "numeric", ks.FockConfig(dim=20))
print(f"max |<n>_closed - <n>_numeric| over the sweep: {np.max(np.abs(ana.mean_n - num.mean_n)):.4f}")
