# Finding a rare self-copying sequence among 2^n candidates.

import numpy as np

from qbio import replicator

space = replicator.SequenceSpace(2, 10)
R = replicator.ReplicatorSet.lowest(space, 1)
print(f"M = {space.size} sequences, {len(R)} replicator")

res = replicator.classical_search(space, R, 10_000, seed=7)
print(f"random draws:   mean {res.mean_hitting_time:.1f} +/- {res.std_error:.1f} (expected {space.size})")

g = replicator.grover_search(space, R)
print(f"Grover:         {g.queries} queries, success {g.success_probability:.5f}")

print("\nGrover queries against M/|R|:")
for n in range(4, 13, 2):
    sp = replicator.SequenceSpace(2, n)
    print(f"  {sp.size:5d}: {replicator.grover_search(sp, replicator.ReplicatorSet.lowest(sp, 1)).queries}")

sp = replicator.SequenceSpace(2, 8)
out = replicator.mcfadden_search(sp, replicator.ReplicatorSet.lowest(sp, 1), replicator.McFaddenParams(t_max=40.0))
print("\nWalk with detection on the replicator (M = 256):")
for t in (1, 5, 10, 20, 40):
    i = int(np.searchsorted(out.times, t))
    print(f"  t = {t:2d}: detected with probability {out.detection_cdf[i]:.4f}")
print(f"  norm bookkeeping error {out.norm_accounting_error:.1e}")
for w in out.warnings():
    print("  note:", w)

abl = replicator.abl_probabilities(
    replicator.PrePostSpec(replicator.spin_state("x"), replicator.spin_state("y"), np.diag([1.0, -1.0]))
)
print("\nPrepared +x, found +y, asked sigma_z in between:", abl.probabilities)
