"""Exact t-SNE for desk-scale BC matrices.

Dense O(n^2) affinities, per-point bandwidth calibration by binary search,
and plain momentum gradient descent on the KL divergence with an early
exaggeration phase. Everything is keyed by the seed option, so identical
inputs and options give identical embeddings.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator

from ._seeds import STREAM_JITTER, STREAM_TSNE_INIT, derive_seed, rng_from
from ._validation import check_array, check_vector

P_FLOOR = 1e-12
DUPLICATE_JITTER_STDEV = 1e-9
_MOMENTUM_SWITCH_ITER = 250
_MOMENTUM_EARLY = 0.5
_MOMENTUM_LATE = 0.8


def _conditional_weights(sq_dists: np.ndarray, beta: float) -> np.ndarray:
    # Shift by the min squared distance; the distribution is shift-invariant
    # and the largest weight stays at 1, which keeps exp() from underflowing
    # to an all-zero row.
    return np.exp(-(sq_dists - sq_dists.min()) * beta)


def _entropy_bits(weights: np.ndarray) -> float:
    p = weights / weights.sum()
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def sigma_search(sq_dists, perplexity: float, *, max_iter: int = 64,
                 tol: float = 1e-10) -> float:
    """Bandwidth sigma_i whose conditional distribution over the given
    squared distances has entropy log2(perplexity).

    Bisects on precision beta = 1/(2 sigma^2), expanding the bracket first.
    Entropy is matched far tighter than the 1e-4 contract whenever the
    target is attainable; degenerate rows (all equidistant) stop at the
    entropy they pin.
    """
    d2 = check_vector(sq_dists, name="sq_dists")
    if d2.shape[0] < 1:
        raise ValueError("need at least one distance")
    if np.any(d2 < 0):
        raise ValueError("squared distances must be nonnegative")
    if not np.any(d2 > 0):
        raise ValueError("duplicate points: all distances are zero")
    if perplexity <= 1:
        raise ValueError("perplexity must be > 1")
    target = math.log2(perplexity)
    beta = 1.0
    lo = 0.0
    hi = math.inf
    for _ in range(max_iter):
        h = _entropy_bits(_conditional_weights(d2, beta))
        diff = h - target
        if abs(diff) <= tol:
            break
        if diff > 0:  # too spread out: tighten
            lo = beta
            beta = beta * 2.0 if hi == math.inf else 0.5 * (beta + hi)
        else:
            hi = beta
            beta = beta / 2.0 if lo == 0.0 else 0.5 * (beta + lo)
    return math.sqrt(1.0 / (2.0 * beta))


def _squared_distances(X: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - X[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def joint_probabilities(X, perplexity: float, seed: int = 0) -> np.ndarray:
    """Symmetrized joint affinities p_ij = (p(j|i) + p(i|j)) / (2n).

    Off-diagonal entries are floored at 1e-12; self-affinities are zero.
    Exact duplicate rows are jittered with seeded normal noise
    (stdev 1e-9) before distances are taken.
    """
    X = check_array(X, name="X", ndim=2, min_rows=2)
    n = X.shape[0]
    if not 1 < perplexity < n:
        raise ValueError(f"perplexity must be in (1, {n}), got {perplexity}")
    d2 = _squared_distances(X)
    off_diag = ~np.eye(n, dtype=bool)
    if np.any(d2[off_diag] == 0.0):
        jitter_rng = rng_from(derive_seed(seed, STREAM_JITTER))
        X = X + jitter_rng.normal(0.0, DUPLICATE_JITTER_STDEV, size=X.shape)
        d2 = _squared_distances(X)
    cond = np.zeros((n, n))
    for i in range(n):
        row = np.delete(d2[i], i)
        sigma = sigma_search(row, perplexity)
        beta = 1.0 / (2.0 * sigma * sigma)
        w = _conditional_weights(row, beta)
        p = w / w.sum()
        cond[i, np.arange(n) != i] = p
    joint = (cond + cond.T) / (2.0 * n)
    joint = np.maximum(joint, P_FLOOR)
    np.fill_diagonal(joint, 0.0)
    return joint


def _student_t_weights(Y: np.ndarray) -> np.ndarray:
    num = 1.0 / (1.0 + _squared_distances(Y))
    np.fill_diagonal(num, 0.0)
    return num


def _kl_divergence(P: np.ndarray, Y: np.ndarray) -> float:
    num = _student_t_weights(Y)
    Q = np.maximum(num / num.sum(), np.finfo(np.float64).tiny)
    mask = P > 0
    return float((P[mask] * np.log(P[mask] / Q[mask])).sum())


class ExactTsne(BaseEstimator):
    """2-D embedding by exact t-SNE.

    After fit_transform the embedding is in embedding_, with the final KL
    divergence in kl_divergence_ and the KL measured at the end of the
    early-exaggeration phase in kl_post_exaggeration_ (both against the
    un-exaggerated affinities).
    """

    def __init__(self, perplexity: float = 30.0, iterations: int = 1000,
                 learning_rate: float = 200.0, early_exaggeration: float = 4.0,
                 exaggeration_iters: int = 100, seed: int = 0):
        self.perplexity = perplexity
        self.iterations = iterations
        self.learning_rate = learning_rate
        self.early_exaggeration = early_exaggeration
        self.exaggeration_iters = exaggeration_iters
        self.seed = seed

    def _check_options(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.early_exaggeration < 1:
            raise ValueError("early_exaggeration must be >= 1")
        if self.exaggeration_iters < 0:
            raise ValueError("exaggeration_iters must be >= 0")

    def fit_transform(self, X, y=None) -> np.ndarray:
        self._check_options()
        X = check_array(X, name="X", ndim=2, min_rows=2)
        n = X.shape[0]
        P = joint_probabilities(X, self.perplexity, seed=self.seed)
        exag_end = min(self.exaggeration_iters, self.iterations)
        P_eff = P * self.early_exaggeration if exag_end > 0 else P
        rng = rng_from(derive_seed(self.seed, STREAM_TSNE_INIT))
        Y = rng.standard_normal((n, 2)) * 1e-4
        update = np.zeros_like(Y)
        kl_post_exaggeration = None
        for it in range(self.iterations):
            if it == exag_end:
                kl_post_exaggeration = _kl_divergence(P, Y)
                P_eff = P
            num = _student_t_weights(Y)
            Q_weights = num / num.sum()
            W = (P_eff - Q_weights) * num
            row_sums = W.sum(axis=1)
            grad = 4.0 * (row_sums[:, None] * Y - W @ Y)
            momentum = (_MOMENTUM_EARLY if it < _MOMENTUM_SWITCH_ITER
                        else _MOMENTUM_LATE)
            update = momentum * update - self.learning_rate * grad
            Y = Y + update
        self.kl_divergence_ = _kl_divergence(P, Y)
        if kl_post_exaggeration is None:  # never left the exaggeration phase
            kl_post_exaggeration = self.kl_divergence_
        self.kl_post_exaggeration_ = kl_post_exaggeration
        self.embedding_ = Y
        return Y

    def fit(self, X, y=None):
        self.fit_transform(X)
        return self
