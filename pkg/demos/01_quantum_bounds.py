# Order-of-magnitude quantum limits for molecular machinery.
#
# Each number below is a closed-form estimate with SI-checked units.

from qbio import bounds
from qbio.units import q

print("Clock limit for a 1e-22 kg, 10 um clock:")
t = bounds.wigner_clock_limit(bounds.ClockSpec(q(1e-22, "kg"), q(1e-5, "m")))
print(f"  T_max = {t.value:.3g} s")

print("\nFolding-time limit of an extended chain (110 Da, 0.4 nm per residue):")
for n in (100, 300, 1000):
    t = bounds.folding_time_limit(bounds.ProteinSpec(n))
    print(f"  N = {n:5d}: T_max = {t.value:.3e} s")
for regime in ("extended", "subdomain", "compact"):
    sc = bounds.folding_scaling(1000, regime)
    print(f"  {regime:9s} regime grows as N^{sc.exponent}")

print("\nPolymerase-sized motor (1e-19 g travelling over 10 um):")
spec = bounds.MotorSpec()
v = bounds.motor_velocity_bound(spec)
print(f"  hbar/(m L) = {v.to('cm/s'):.3e} cm/s")
print(f"  zero-load speed = {bounds.bp_rate_to_velocity(spec.zero_load_speed).to('cm/s'):.2e} cm/s")
for f in (0, 10, 20, 30, 40):
    r = bounds.motor_speed_under_tension(q(f, "pN"), spec)
    print(f"  F = {f:2d} pN -> {r.speed.to('bp/s'):5.1f} bp/s")
print(f"  linear stall force {r.stall_force.to('pN'):.1f} pN, {bounds.stall_residual(spec):.2f} of 40 pN")

print("\nDecoherence of a 500 Da superposition spread over 1 nm at 300 K:")
for gamma in (1e12, 1e9, 1e7):
    tau = bounds.thermal_decoherence_time(q(500, "Da"), q(300, "K"), q(1, "nm"), q(gamma, "1/s"))
    print(f"  damping {gamma:.0e}/s -> tau = {tau.value:.2e} s")

print("\nProton through a 0.5 eV, 0.5 A barrier:")
for e in (0.1, 0.25, 0.4):
    tr = bounds.barrier_transmission(q(e, "eV"), q(0.5, "eV"), q(0.5, "A"), q(1, "Da"))
    print(f"  E = {e:.2f} eV: T = {tr:.3e}")
