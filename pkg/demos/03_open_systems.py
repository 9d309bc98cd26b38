# Decoherence, Zeno freezing and environment-assisted synchrony.

import math

import numpy as np

from qbio import lindblad

print("Qubit dephasing at gamma = 0.5:")
traj = lindblad.dephasing_run(0.5, 4.0)
for i in np.linspace(0, len(traj) - 1, 5).astype(int):
    t = traj.times[i]
    print(f"  t={t:4.1f}  |rho01| = {traj.diagnostics['coherence'][i]:.6f}  (exact {0.5 * math.exp(-t):.6f})")

spec = lindblad.DoubleWellSpec()
print("\nStaying in the left well until t = 10 as the environment watches harder:")
for g in (0, 1, 5, 25, 125, 1e4):
    print(f"  gamma = {g:7g}: survival {lindblad.zeno_survival(g, spec, 10.0):.4f}")

lo, hi = lindblad.beat_window(spec)
print(f"\nTwo flip-flop frequencies {spec.omega1} and {spec.omega2} drift out of phase between t={lo:.2f} and {hi:.2f}.")
for g in (0.0, 1.0, 10.0, 75.0):
    s = spec.with_gamma(g)
    idx = lindblad.synchrony_index(lindblad.double_well_run(s, hi), s, (lo, hi))
    print(f"  gamma = {g:5.1f}: synchrony index {idx:.3f}")
print("  (" + lindblad.SYNCHRONY_LABEL + ")")
