"""Schur multipliers from measures on the circle, truncated to Toeplitz form.

Fourier coefficients of a measure populate a banded Toeplitz matrix that acts
on matrices entrywise.  A point mass gives a rank-one multiplier that
conjugates by a diagonal unitary; Lebesgue measure projects onto the main
diagonal; any positive measure yields a positive semidefinite Toeplitz block.
The truncated spectrum of the multiplier is computed pointwise from the
coefficients.
"""

import numpy as np

from krauslab import schur

atom = schur.CircleMeasure.point_mass(1j)
sym = schur.fourier_coeffs(atom, 2)
print("point mass at z = i, coefficients d_k = z^{-k}:")
for k in range(-2, 3):
    print(f"   d_{k:+d} = {sym.coeff(k):+.1f}")

spec = schur.truncated_spectrum(sym, 2)
print(f"\ntruncated multiplier spectrum at n = 2: {np.round(spec, 6).tolist()}")

leb = schur.fourier_coeffs(schur.CircleMeasure.lebesgue(32), 3)
m = schur.multiplier_matrix(leb, 4)
print("\nLebesgue measure truncates to the diagonal projection:")
print(np.round(m.real, 12))

theta = 2.0 * np.pi * np.arange(64) / 64.0
cosm = schur.CircleMeasure(density=1.0 + np.cos(theta))
sym = schur.fourier_coeffs(cosm, 3)
toep = schur.multiplier_matrix(sym, 4)
print("\ndensity 1 + cos(theta) on a 64-point grid, 4 x 4 Toeplitz block:")
print(np.round(toep.real, 9))
eigs = np.linalg.eigvalsh(toep)
print(f"eigenvalues {np.round(eigs, 6).tolist()}: nonnegative, the measure is positive")

x = np.arange(16, dtype=complex).reshape(4, 4)
print("\nentrywise action on a test matrix:")
print(schur.schur_apply(sym, x).real)

inv = schur.pointwise_invertibility(sym, eps=1e-8)
print(f"\npointwise invertible at eps = 1e-8: {inv}")
print(f"smallest coefficient magnitude in the window: {schur.min_abs_coeff(sym):.6f}")
