"""Number states: sampling Hermite functions onto Z_d gives DFT eigenvectors.

Builds the d = 6 eigenvector table of the finite Fourier matrix, checks the
eigenvalue pattern i**n, and shows the linear dependence |5> = -|1>.
"""

import numpy as np

from finiteq import SystemParams, fourier_matrix, number_state

d = 6
params = SystemParams(d)
F = fourier_matrix(d)

print(f"Eigenvectors of the finite Fourier matrix, d = {d}")
indices = [0, 1, 2, 3, 4, 6]
columns = {n: number_state(n, params) for n in indices}

header = "m |" + "".join(f"   n={n:<4}" for n in indices)
print(header)
print("-" * len(header))
for m in range(d):
    row = f"{m} |" + "".join(f" {columns[n].components[m].real:8.5f}" for n in indices)
    print(row)

print("\nEigenvalue check: F @ v == i**n v")
for n in indices:
    v = columns[n].components
    err = np.linalg.norm(F @ v - 1j**n * v)
    print(f"  n={n}: eigenvalue i**{n % 4}, residual {err:.2e}")

v1 = number_state(1, params).components
v5 = number_state(5, params).components
print(f"\nLinear dependence: || |5> + |1> || = {np.linalg.norm(v5 + v1):.2e}")
print("Only d of the sampled Hermite vectors can be independent;")
print("the six above span the space (singular values follow):")
mat = np.column_stack([columns[n].components for n in indices])
print(" ", np.round(np.linalg.svd(mat, compute_uv=False), 5))
