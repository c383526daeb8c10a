"""
The pullback operator and its Hermitian restriction
===================================================

An endomorphism acts on Hermitian forms by B -> A^H B A.  In the
column-major vec basis this operator is cospectral with kron(A, conj(A)),
so its eigenvalues are the products pi_i * conj(pi_j).  Restricting to
Hermitian matrices keeps the dominant eigenvalue |pi_1|^2.
"""

import numpy as np

from dyndeg import (hermitian_basis, kron, pullback_operator, restrict_to_subspace,
                    spectral_radius, vec)

rng = np.random.default_rng(0)
A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))

# vec stacks columns: e11, e21, e31, e12, ...
print("vec([[1, 2], [3, 4]]) =", vec(np.array([[1, 2], [3, 4]])))

# L is assembled from the images of the matrix units.
L = pullback_operator(A)
B = rng.standard_normal((3, 3))
print("L vec(B) == vec(A^H B A):", np.allclose(L @ vec(B), vec(A.conj().T @ B @ A)))

# Compare spectra, not entries.
pis = np.linalg.eigvals(A)
pairs = np.array([p * np.conj(q) for p in pis for q in pis])


def distance(spectrum):
    return max(np.min(np.abs(z - pairs)) for z in spectrum)


print(f"spectrum(L) vs pairwise products: {distance(np.linalg.eigvals(L)):.1e}")
print(f"spectrum(kron(A, conj A)) vs pairwise products: {distance(np.linalg.eigvals(kron(A, A.conj()))):.1e}")

# Restrict to the 9-dimensional real space of 3x3 Hermitian matrices.
basis = hermitian_basis("C", 3)
R, residual = restrict_to_subspace(L, basis)
print(f"restricted operator {R.shape}, out-of-span residual {residual:.1e}")
print("spectral radius of R:", spectral_radius(R))
print("|pi_1|^2           :", np.max(np.abs(pis)) ** 2)

# A diagonal example where everything is visible by hand.
R, _ = restrict_to_subspace(pullback_operator(np.diag([2.0, 3.0])), hermitian_basis("R", 2))
print("diag(2, 3) on Sym_2(R):\n", R.round(12))
