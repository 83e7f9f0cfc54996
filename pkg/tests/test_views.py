from __future__ import annotations

import numpy as np
import pytest

from vine.archive import read_run
from vine.pca import CovariancePca
from vine.views import (list_views, pooled_bcs, read_view, reduce_run,
                        view_filename, write_view)


class TestReduceRun:
    def test_identity_copies_bcs(self, es_run_dir):
        archive = read_run(es_run_dir)
        view = reduce_run(archive, "identity")
        for g, record in enumerate(archive.iter_generations()):
            np.testing.assert_array_equal(view.coords[g][0], record.parent_bc)
            for i, entry in enumerate(record.offspring):
                np.testing.assert_array_equal(view.coords[g][1 + i], entry.bc)

    def test_point_counts_match_archive(self, es_run_dir):
        archive = read_run(es_run_dir)
        for method in ("identity", "pca"):
            view = reduce_run(archive, method)
            assert view.generations == 3
            for block in view.coords:
                assert block.shape == (11, 2)

    def test_pooled_pca_equals_manual_concatenation(self, es_run_dir):
        archive = read_run(es_run_dir)
        view = reduce_run(archive, "pca")
        X, counts = pooled_bcs(archive)
        manual = CovariancePca(2).fit(X).transform(X)
        np.testing.assert_array_equal(np.vstack(view.coords), manual)
        assert counts == [11, 11, 11]

    def test_identity_rejected_on_high_dimensional_bcs(self, ga_run_dir):
        archive = read_run(ga_run_dir)
        with pytest.raises(ValueError, match="identity"):
            reduce_run(archive, "identity")

    def test_unknown_method_rejected(self, es_run_dir):
        with pytest.raises(ValueError):
            reduce_run(read_run(es_run_dir), "umap")

    def test_tsne_view_aligned(self, ga_run_dir):
        view = read_view(ga_run_dir, "tsne")
        assert view.generations == 3
        for block in view.coords:
            assert block.shape == (7, 2)
            assert np.all(np.isfinite(block))


class TestViewFiles:
    def test_write_read_round_trip(self, es_run_dir, tmp_path):
        archive = read_run(es_run_dir)
        view = reduce_run(archive, "pca")
        write_view(tmp_path, view)
        back = read_view(tmp_path, "pca")
        assert back.method == "pca"
        for a, b in zip(view.coords, back.coords):
            np.testing.assert_array_equal(a, b)

    def test_write_is_byte_deterministic(self, es_run_dir, tmp_path):
        archive = read_run(es_run_dir)
        (tmp_path / "a").mkdir()
        (tmp_path / "b").mkdir()
        write_view(tmp_path / "a", reduce_run(archive, "pca"))
        write_view(tmp_path / "b", reduce_run(archive, "pca"))
        assert (tmp_path / "a" / view_filename("pca")).read_bytes() == \
            (tmp_path / "b" / view_filename("pca")).read_bytes()

    def test_list_views(self, es_run_dir):
        assert list_views(es_run_dir) == ["identity", "pca"]

    def test_missing_view_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_view(tmp_path, "pca")
