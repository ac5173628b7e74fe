"""Pauli blocks of a qubit-first state and the maps rho -> Upsilon_R(rho)."""
import numpy as np

from separability import pauli_blocks, phi_mixture, random_density, theorem2_check, upsilon_R
from separability.criteria import PERES_R, r_battery
from separability.linalg import min_eigenvalue, partial_transpose

rho = phi_mixture(0.9)
b = pauli_blocks(rho)
for name in ("m0", "mx", "my", "mz"):
    print(name)
    print(np.round(getattr(b, name), 3))

# The reflection diag(1,-1,1) reproduces the partial transpose on the qubit.
r = random_density((2, 3), 3)
gap = np.abs(upsilon_R(r, PERES_R) - partial_transpose(r.mat, r.dims, 0)).max()
print("\nPeres member vs partial transpose, max entry gap:", gap)

# Scan the battery and report which contraction gives the most negative spectrum.
battery = r_battery(64, seed=1)
mins = [min_eigenvalue(upsilon_R(rho, R)) for R in battery]
k = int(np.argmin(mins))
print("worst member", k, "min eig", round(mins[k], 6))
print(np.round(battery[k], 3))
print("theorem2_check:", theorem2_check(rho, n_samples=64, seed=1).margin)
