"""PCA backed by a cyclic Jacobi eigendecomposition of the sample covariance.

Jacobi is exactly reproducible and easy to verify against small hand
oracles, which matters more here than raw speed: BC matrices are at most a
few thousand columns wide.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_array


def jacobi_eigh(matrix, *, tol: float = 1e-10, max_sweeps: int = 100):
    """Eigendecompose a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until every off-diagonal magnitude is at or below tol (or a
    floating-point floor relative to the matrix scale, whichever is
    larger). Returns (eigenvalues, eigenvectors) with eigenvectors in
    columns, unsorted.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v
    scale = np.linalg.norm(a)
    floor = max(tol, np.finfo(np.float64).eps * scale)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max()
        if off <= floor:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= floor / n:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                t = 1.0 if theta >= 0 else -1.0
                t /= abs(theta) + math.hypot(theta, 1.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = c * a[:, p] - s * a[:, q]
                col_q = s * a[:, p] + c * a[:, q]
                a[:, p] = col_p
                a[:, q] = col_q
                a[p, :] = col_p
                a[q, :] = col_q
                a[p, p] = c * c * app - 2.0 * s * c * apq + s * s * aqq
                a[q, q] = s * s * app + 2.0 * s * c * apq + c * c * aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                col_p = c * v[:, p] - s * v[:, q]
                col_q = s * v[:, p] + c * v[:, q]
                v[:, p] = col_p
                v[:, q] = col_q
    return np.diag(a).copy(), v


class CovariancePca(BaseEstimator, TransformerMixin):
    """Linear projection onto the top principal axes of the training data.

    Components are rows of components_, orthonormal, sorted by
    nonincreasing explained variance, each oriented so its
    largest-magnitude entry is positive.
    """

    def __init__(self, n_components: int = 2):
        self.n_components = n_components

    def fit(self, X, y=None):
        X = check_array(X, name="X", ndim=2, min_rows=2)
        n, d = X.shape
        k = self.n_components
        if not 1 <= k <= min(n, d):
            raise ValueError(
                f"n_components must be in [1, {min(n, d)}] for data of shape "
                f"{X.shape}, got {k}")
        self.mean_ = X.mean(axis=0)
        centered = X - self.mean_
        cov = (centered.T @ centered) / (n - 1)
        eigenvalues, vectors = jacobi_eigh(cov)
        order = np.argsort(-eigenvalues, kind="stable")[:k]
        values = np.maximum(eigenvalues[order], 0.0)
        components = vectors[:, order].T.copy()
        for row in components:
            if row[np.argmax(np.abs(row))] < 0:
                row *= -1.0
        self.explained_variance_ = values
        self.components_ = components
        self.n_features_in_ = d
        return self

    def transform(self, X):
        X = check_array(X, name="X", ndim=2)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected "
                             f"{self.n_features_in_}")
        return (X - self.mean_) @ self.components_.T

    def inverse_transform(self, Y):
        Y = check_array(Y, name="Y", ndim=2)
        return self.mean_ + Y @ self.components_
