"""Few-photon switching versus drive strength and (|0> +- |1>)/sqrt 2 fidelities."""
import warnings

import numpy as np

import kerrscope as ks

warnings.simplefilter("ignore", ks.ValidityWarning)

omega_grid = ks.Grid(0.0, 0.03, 7)
print("omega/alpha " + " ".join(f"{w:7.3f}" for w in omega_grid.values()))
for delta in (-2.0, -1.0, 0.0, 1.0):
    p = ks.ModelParams.from_scaled(delta, 1.0, 0.0, 1e-4, two_s=50)
    res = ks.sweep_drive(p, omega_grid, "analytic", two_s=50)
    print(f"delta={delta:+.1f}   " + " ".join(f"{n:7.3f}" for n in res.mean_n))

print()
cfg = ks.FockConfig(dim=20)
for delta in (0.5, -1.5):
    p = ks.ModelParams.from_scaled(delta, 1.0, 0.06, 1e-3, two_s=50)
    obs, fid, dist = ks.observables_full(ks.steady_state(p, cfg))
    print(f"delta={delta:+.1f}: <n>={obs.mean_n:.3f}  Phi+={fid.phi_plus:.3f}  "
          f"Phi-={fid.phi_minus:.3f}  P(n>=2)={dist.probs[2:].sum():.3f}")

# fidelity-weighted view of the full detuning axis
res = ks.sweep_detuning(ks.ModelParams.from_scaled(0.0, 1.0, 0.06, 1e-3, 50),
                        ks.Grid(-3.0, 1.0, 81), "numeric", cfg)
best = np.argmax(res.phi_plus)
print(f"max Phi+ = {res.phi_plus[best]:.3f} at delta/alpha = {res.axis[best]:.2f}")
