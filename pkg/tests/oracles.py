"""Independent reference implementations used only to check the package.

These deliberately take different algorithmic routes than the code under
test (characteristic polynomial instead of Jacobi rotations) so agreement
is meaningful.
"""

from __future__ import annotations

import numpy as np


def charpoly_eigh(matrix):
    """Brute-force symmetric eigensolver.

    Characteristic polynomial coefficients via the Faddeev-LeVerrier trace
    recurrence, eigenvalues as its roots, eigenvectors from the null space
    of (A - lambda I) via SVD. Returns (eigenvalues desc, eigenvectors as
    rows, unit norm, arbitrary sign).
    """
    a = np.asarray(matrix, dtype=np.float64)
    n = a.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    m = np.eye(n)
    for k in range(1, n + 1):
        m = a @ m
        coeffs[k] = -np.trace(m) / k
        m = m + coeffs[k] * np.eye(n)
    eigenvalues = np.sort(np.roots(coeffs).real)[::-1]
    vectors = []
    for lam in eigenvalues:
        _, _, vt = np.linalg.svd(a - lam * np.eye(n))
        vectors.append(vt[-1])
    return eigenvalues, np.array(vectors)
