# How many oracle queries find one item among N with certainty?
#
# Solving (2Q+1) asin(1/sqrt(N)) = pi/2 for small Q picks out N = 4 and
# N close to 20, the sizes of the nucleotide and amino-acid alphabets.

import numpy as np

from qbio import grover

print(" Q   N exact")
for Q in range(6):
    print(f"{Q:2d}   {grover.items_for_iterations(Q):8.4f}")

print("\nStatevector check with one marked item:")
for M, Q in ((4, 1), (20, 3), (21, 3), (64, 6)):
    prob = grover.GroverProblem(M, [0], Q)
    print(f"  M={M:3d} Q={Q}: simulated {grover.run_grover(prob):.6f}, closed form {grover.predict(prob).success_probability:.6f}")

print("\nMarked-state probability across iterations, M=64:")
probs = [abs(psi[0]) ** 2 for psi in grover.grover_states(grover.GroverProblem(64, [0], 12))]
print("  " + " ".join(f"{p:.2f}" for p in probs))
print(f"  peak after {int(np.argmax(probs))} queries")

eff = grover.sampling_efficiency(4)
print(f"\nN=4: {eff.classical_expected_trials:.0f} classical trials vs {eff.quantum_queries} query (sqrt(N) = {eff.speedup_factor:.0f})")
