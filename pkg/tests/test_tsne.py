from __future__ import annotations

import numpy as np
import pytest

from vine.tsne import (ExactTsne, _conditional_weights, _entropy_bits,
                       _squared_distances, joint_probabilities, sigma_search)


def achieved_perplexity(sq_dists, sigma):
    beta = 1.0 / (2.0 * sigma * sigma)
    return 2.0 ** _entropy_bits(_conditional_weights(sq_dists, beta))


class TestSigmaSearch:
    def test_calibration_on_random_rows(self):
        rng = np.random.default_rng(0)
        X = rng.standard_normal((50, 10))
        d2 = _squared_distances(X)
        for i in range(50):
            row = np.delete(d2[i], i)
            sigma = sigma_search(row, 20.0)
            assert abs(achieved_perplexity(row, sigma) - 20.0) < 1e-3

    def test_equidistant_points_pin_entropy_at_one_bit(self):
        sigma = sigma_search(np.array([1.0, 1.0]), 2.0)
        beta = 1.0 / (2.0 * sigma * sigma)
        assert _entropy_bits(_conditional_weights(np.array([1.0, 1.0]), beta)) \
            == pytest.approx(1.0, abs=1e-12)

    def test_distance_doubling_doubles_sigma(self):
        rng = np.random.default_rng(1)
        row = rng.random(30) + 0.1
        s1 = sigma_search(row, 10.0)
        s2 = sigma_search(4.0 * row, 10.0)  # squared distances scale by 4
        assert s2 / s1 == pytest.approx(2.0, rel=1e-9)

    def test_all_zero_distances_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            sigma_search(np.zeros(5), 2.0)

    def test_perplexity_must_exceed_one(self):
        with pytest.raises(ValueError):
            sigma_search(np.array([1.0, 2.0]), 1.0)


class TestJointProbabilities:
    def test_symmetric_nonnegative_unit_sum(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((60, 8))
        P = joint_probabilities(X, 15.0)
        assert np.array_equal(P, P.T)
        assert np.all(P >= 0.0)
        assert abs(P.sum() - 1.0) < 1e-9
        assert np.all(np.diag(P) == 0.0)

    def test_off_diagonal_floor(self):
        # two tight clusters far apart force tiny cross affinities
        rng = np.random.default_rng(3)
        X = np.vstack([rng.standard_normal((10, 3)),
                       rng.standard_normal((10, 3)) + 1e4])
        P = joint_probabilities(X, 5.0)
        off = P[~np.eye(20, dtype=bool)]
        assert off.min() == pytest.approx(1e-12)

    def test_duplicate_rows_are_jittered_not_fatal(self):
        X = np.zeros((12, 4))
        X[6:] = 1.0
        P = joint_probabilities(X, 5.0, seed=9)
        assert np.all(np.isfinite(P))
        assert abs(P.sum() - 1.0) < 1e-9

    def test_perplexity_at_least_n_rejected(self):
        X = np.random.default_rng(4).standard_normal((10, 3))
        with pytest.raises(ValueError):
            joint_probabilities(X, 10.0)


class TestExactTsne:
    def test_shape_and_finiteness(self):
        rng = np.random.default_rng(5)
        X = rng.standard_normal((40, 6))
        Y = ExactTsne(perplexity=10.0, iterations=150,
                      exaggeration_iters=30, seed=0).fit_transform(X)
        assert Y.shape == (40, 2)
        assert np.all(np.isfinite(Y))

    def test_identical_seeds_identical_embeddings(self):
        rng = np.random.default_rng(6)
        X = rng.standard_normal((30, 5))
        opts = dict(perplexity=8.0, iterations=120, exaggeration_iters=25)
        a = ExactTsne(seed=4, **opts).fit_transform(X)
        b = ExactTsne(seed=4, **opts).fit_transform(X)
        assert np.array_equal(a, b)
        c = ExactTsne(seed=5, **opts).fit_transform(X)
        assert not np.array_equal(a, c)

    def test_final_kl_not_above_post_exaggeration_kl(self):
        rng = np.random.default_rng(7)
        X = rng.standard_normal((100, 10))
        model = ExactTsne(perplexity=30.0, iterations=1000,
                          exaggeration_iters=100, seed=1).fit(X)
        assert model.kl_divergence_ <= model.kl_post_exaggeration_
        assert model.kl_divergence_ >= 0.0

    def test_no_exaggeration_phase(self):
        # post-exaggeration KL degenerates to the KL at descent start
        rng = np.random.default_rng(8)
        X = rng.standard_normal((20, 4))
        model = ExactTsne(perplexity=5.0, iterations=50,
                          exaggeration_iters=0, seed=2).fit(X)
        assert np.isfinite(model.kl_post_exaggeration_)
        assert np.isfinite(model.kl_divergence_)
        assert np.all(np.isfinite(model.embedding_))

    def test_exaggeration_longer_than_run(self):
        rng = np.random.default_rng(9)
        X = rng.standard_normal((20, 4))
        model = ExactTsne(perplexity=5.0, iterations=30,
                          exaggeration_iters=100, seed=2).fit(X)
        assert model.kl_post_exaggeration_ == model.kl_divergence_

    def test_option_validation(self):
        X = np.random.default_rng(10).standard_normal((10, 3))
        with pytest.raises(ValueError):
            ExactTsne(iterations=0).fit_transform(X)
        with pytest.raises(ValueError):
            ExactTsne(learning_rate=0.0).fit_transform(X)
        with pytest.raises(ValueError):
            ExactTsne(early_exaggeration=0.5).fit_transform(X)
        with pytest.raises(ValueError):
            ExactTsne(exaggeration_iters=-1).fit_transform(X)
        with pytest.raises(ValueError):
            ExactTsne(perplexity=10.0).fit_transform(X)

    def test_get_params_surface(self):
        params = ExactTsne().get_params()
        assert set(params) == {"perplexity", "iterations", "learning_rate",
                               "early_exaggeration", "exaggeration_iters",
                               "seed"}
