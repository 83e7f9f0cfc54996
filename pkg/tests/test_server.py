from __future__ import annotations

from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from vine.archive import read_run
from vine.server import build_app, load_sessions, parse_bind
from vine.session import generation_points, load_session


@pytest.fixture(scope="module")
def client(es_run_dir, ga_run_dir):
    sessions = load_sessions([es_run_dir, ga_run_dir])
    return TestClient(build_app(sessions))


class TestRunListing:
    def test_lists_all_manifests(self, client):
        body = client.get("/runs").json()
        assert [m["run_id"] for m in body] == ["es_walker", "ga_grid"]
        assert all(m["complete"] for m in body)

    def test_manifest_endpoint(self, client):
        body = client.get("/runs/es_walker/manifest").json()
        assert body["algo"] == "es"
        assert body["generations_completed"] == 3

    def test_unknown_run_is_404(self, client):
        assert client.get("/runs/nope/manifest").status_code == 404
        assert client.get("/runs/nope/fitness").status_code == 404

    def test_views_endpoint(self, client):
        assert client.get("/runs/es_walker/views").json() == {
            "views": ["identity", "pca"]}
        assert client.get("/runs/ga_grid/views").json() == {
            "views": ["pca", "tsne"]}


class TestFitnessEndpoint:
    def test_matches_archive(self, client, es_run_dir):
        body = client.get("/runs/es_walker/fitness").json()
        archive = read_run(es_run_dir)
        expected = [archive.read_generation(g).parent_fitness
                    for g in range(3)]
        assert body["parent_fitness"] == expected


class TestGenerationEndpoint:
    def test_equals_session_slice(self, client, es_run_dir):
        body = client.get("/runs/es_walker/generations/1?view=pca").json()
        session = load_session(es_run_dir)
        expected = generation_points(session, 1, "pca")
        assert body["g"] == 1
        assert len(body["points"]) == 11
        for got, want in zip(body["points"], expected.points):
            assert got["index"] == want.index
            assert got["fitness"] == want.fitness
            assert got["bin"] == want.bin
            assert got["is_parent"] == want.is_parent
            assert got["coords"] == want.coords.tolist()

    def test_exactly_one_parent_point(self, client):
        body = client.get("/runs/ga_grid/generations/0?view=pca").json()
        assert sum(p["is_parent"] for p in body["points"]) == 1
        assert len(body["points"]) == 7

    def test_unknown_view_is_404(self, client):
        r = client.get("/runs/es_walker/generations/0?view=umap")
        assert r.status_code == 404

    def test_generation_out_of_range_is_404(self, client):
        assert client.get(
            "/runs/es_walker/generations/3?view=pca").status_code == 404


class TestNearestEndpoint:
    def test_resolves_click_to_point_index(self, client, es_run_dir):
        record = read_run(es_run_dir).read_generation(1)
        target = record.offspring[5].bc
        body = client.get(
            f"/runs/es_walker/nearest/1?view=identity"
            f"&x={target[0]}&y={target[1]}").json()
        assert body == {"index": 5}

    def test_parent_resolves_to_minus_one(self, client, es_run_dir):
        record = read_run(es_run_dir).read_generation(0)
        bc = record.parent_bc
        body = client.get(
            f"/runs/es_walker/nearest/0?view=identity"
            f"&x={bc[0]}&y={bc[1]}").json()
        assert body == {"index": -1}

    def test_unknown_view_is_404(self, client):
        r = client.get("/runs/es_walker/nearest/0?view=umap&x=0&y=0")
        assert r.status_code == 404


class TestPointEndpoint:
    def test_offspring_detail(self, client, es_run_dir):
        body = client.get("/runs/es_walker/point/1/4").json()
        record = read_run(es_run_dir).read_generation(1)
        entry = record.offspring[4]
        assert body["fitness"] == entry.fitness
        assert body["bc"] == entry.bc.tolist()
        assert body["spec"] == {"noise_seed": entry.noise_seed,
                                "sign": entry.sign}
        assert body["rollout_seed"] == entry.rollout_seed
        assert set(body["coords"]) == {"identity", "pca"}
        assert body["coords"]["identity"] == entry.bc.tolist()

    def test_parent_detail(self, client, es_run_dir):
        body = client.get("/runs/es_walker/point/0/-1").json()
        record = read_run(es_run_dir).read_generation(0)
        assert body["is_parent"] is True
        assert body["fitness"] == record.parent_fitness
        assert body["spec"] is None

    def test_ga_member_spec_fields(self, client, ga_run_dir):
        body = client.get("/runs/ga_grid/point/1/0").json()
        assert set(body["spec"]) == {"parent_index", "mutation_seed"}

    def test_out_of_range_is_404(self, client):
        assert client.get("/runs/es_walker/point/0/10").status_code == 404
        assert client.get("/runs/es_walker/point/0/-2").status_code == 404


class TestRolloutReplay:
    def test_deterministic_replay_reproduces_stored_bc(self, client, es_run_dir):
        record = read_run(es_run_dir).read_generation(2)
        for i in (0, 3, 9):
            body = client.post("/runs/es_walker/rollout",
                               json={"g": 2, "i": i, "stochastic": False}).json()
            assert len(body["traces"]) == 1
            trace = body["traces"][0]
            assert trace["final_bc"] == record.offspring[i].bc.tolist()
            assert trace["fitness"] == record.offspring[i].fitness
            assert len(trace["frames"]) == 1000
            assert trace["frames"][-1]["state"][:2] == trace["final_bc"]

    def test_parent_replay(self, client, es_run_dir):
        record = read_run(es_run_dir).read_generation(1)
        body = client.post("/runs/es_walker/rollout",
                           json={"g": 1, "i": -1}).json()
        assert body["traces"][0]["final_bc"] == record.parent_bc.tolist()

    def test_ga_parent_replay_is_champion(self, client, ga_run_dir):
        record = read_run(ga_run_dir).read_generation(2)
        body = client.post("/runs/ga_grid/rollout",
                           json={"g": 2, "i": -1}).json()
        assert body["traces"][0]["final_bc"] == record.parent_bc.tolist()

    def test_stochastic_returns_nine_traces_repeatably(self, client):
        payload = {"g": 1, "i": 2, "stochastic": True, "count": 9}
        r1 = client.post("/runs/es_walker/rollout", json=payload)
        r2 = client.post("/runs/es_walker/rollout", json=payload)
        assert len(r1.json()["traces"]) == 9
        assert r1.content == r2.content

    def test_stochastic_traces_differ_from_each_other(self, client):
        body = client.post("/runs/es_walker/rollout",
                           json={"g": 1, "i": 2, "stochastic": True,
                                 "count": 3}).json()
        endpoints = [tuple(t["final_bc"]) for t in body["traces"]]
        assert len(set(endpoints)) == 3

    def test_invalid_count_is_422(self, client):
        r = client.post("/runs/es_walker/rollout",
                        json={"g": 0, "i": 0, "count": 0})
        assert r.status_code == 422

    def test_out_of_range_is_404(self, client):
        r = client.post("/runs/es_walker/rollout", json={"g": 9, "i": 0})
        assert r.status_code == 404
        r = client.post("/runs/es_walker/rollout", json={"g": 0, "i": 99})
        assert r.status_code == 404


class TestByteDeterminism:
    def test_identical_requests_identical_bytes(self, client):
        for path in ("/runs", "/runs/es_walker/fitness",
                     "/runs/es_walker/generations/2?view=identity",
                     "/runs/es_walker/point/2/5"):
            assert client.get(path).content == client.get(path).content


class TestUiMount:
    def test_ui_served_from_same_origin(self, es_run_dir):
        ui_dir = Path(__file__).resolve().parent.parent / "frontend" / "dist"
        if not (ui_dir / "index.html").is_file():
            pytest.skip("frontend not built")
        app = build_app(load_sessions([es_run_dir]), ui_dir=ui_dir)
        client = TestClient(app)
        assert "vine inspector" in client.get("/").text
        # API routes must not be shadowed by the static mount
        assert client.get("/runs").status_code == 200


class TestServerSetup:
    def test_load_sessions_rejects_empty(self):
        with pytest.raises(ValueError, match="no runs"):
            load_sessions([])

    def test_load_sessions_rejects_duplicates(self, es_run_dir):
        with pytest.raises(ValueError, match="duplicate"):
            load_sessions([es_run_dir, es_run_dir])

    def test_parse_bind(self):
        assert parse_bind("0.0.0.0:9000") == ("0.0.0.0", 9000)
        with pytest.raises(ValueError):
            parse_bind("9000")
