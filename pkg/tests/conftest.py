from __future__ import annotations

from dataclasses import asdict
from pathlib import Path

import pytest

from vine import EsConfig, GaConfig, get_environment, run_evolution
from vine.archive import RunManifest, RunWriter, read_run
from vine.views import reduce_run, write_view

ES_TEST_CONFIG = EsConfig(population_size=10, generations=3, run_seed=11)
GA_TEST_CONFIG = GaConfig(population_size=6, truncation_size=3, elite_count=1,
                          generations=3, run_seed=5)


def train_run(run_dir, env_id, algo, config):
    env = get_environment(env_id)
    manifest = RunManifest(
        run_id=Path(run_dir).name, algo=algo, env_id=env_id,
        config=asdict(config), bc_dimension=env.bc_dimension,
        layer_sizes=list(env.policy_spec.layer_sizes))
    writer = RunWriter(run_dir, manifest)
    return run_evolution(env_id, config, writer)


def snapshot_bytes(run_dir) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(Path(run_dir).iterdir())
            if p.is_file()}


@pytest.fixture(scope="session")
def es_run_dir(tmp_path_factory):
    """Small ES walker run (n=10, 3 generations) with identity + pca views."""
    run_dir = tmp_path_factory.mktemp("runs") / "es_walker"
    train_run(run_dir, "point_walker", "es", ES_TEST_CONFIG)
    archive = read_run(run_dir)
    write_view(run_dir, reduce_run(archive, "identity"))
    write_view(run_dir, reduce_run(archive, "pca"))
    return run_dir


@pytest.fixture(scope="session")
def ga_run_dir(tmp_path_factory):
    """Small GA grid run (pop 6, 3 generations) with a pca view.

    Early grid populations produce duplicate BCs, so building a tsne view
    here also exercises the duplicate-jitter path.
    """
    run_dir = tmp_path_factory.mktemp("runs") / "ga_grid"
    train_run(run_dir, "grid_quest", "ga", GA_TEST_CONFIG)
    archive = read_run(run_dir)
    write_view(run_dir, reduce_run(archive, "pca"))
    write_view(run_dir, reduce_run(
        archive, "tsne",
        {"perplexity": 5.0, "iterations": 60, "exaggeration_iters": 20}))
    return run_dir
