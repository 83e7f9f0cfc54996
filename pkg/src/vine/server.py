"""HTTP service over loaded runs: manifests, point slices, fitness curves,
point details, and seed-exact rollout replay.

Every endpoint is a pure read of immutable sessions, so responses are
byte-deterministic for identical requests.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ._seeds import STREAM_REPLAY, derive_seed
from .archive import OffspringRecord, reconstruct_params
from .envs import RolloutTrace, get_environment
from .session import (Session, PointSlice, fitness_curve, generation_points,
                      load_session, nearest_point)

DEFAULT_REPLAY_COUNT = 9


class RolloutReplayRequest(BaseModel):
    g: int
    i: int  # -1 = parent
    stochastic: bool = False
    count: int = Field(default=DEFAULT_REPLAY_COUNT, ge=1)


def _point_params(session: Session, g: int, i: int) -> np.ndarray:
    record = session.records[g]
    if i == -1:
        if session.archive.manifest.algo == "es":
            return record.parent_params
        # GA has no separate parent vector; the champion member stands in.
        return reconstruct_params(session.archive, g, record.champion_index)
    return reconstruct_params(session.archive, g, i)


def rollout_replay(session: Session, request: RolloutReplayRequest) -> list[RolloutTrace]:
    """Replay a point's episode(s) from reconstructed parameters.

    Deterministic requests return exactly one trace. Stochastic requests
    return `count` traces whose rollout seeds derive from
    (run_seed, g, i, replay index), so repeating a request replays the
    same episodes.
    """
    n = session.archive.manifest.population_size
    if not 0 <= request.g < session.generations:
        raise IndexError(f"generation {request.g} out of range "
                         f"[0, {session.generations})")
    if not -1 <= request.i < n:
        raise IndexError(f"point index {request.i} out of range [-1, {n})")
    params = _point_params(session, request.g, request.i)
    env = get_environment(session.archive.manifest.env_id)
    if not request.stochastic:
        _, trace = env.rollout(params, record_trajectory=True)
        return [trace]
    run_seed = int(session.archive.manifest.config["run_seed"])
    traces = []
    for j in range(request.count):
        seed = derive_seed(run_seed, STREAM_REPLAY, request.g, request.i, j)
        _, trace = env.rollout(params, stochastic=True, rollout_seed=seed,
                               record_trajectory=True)
        traces.append(trace)
    return traces


def _slice_json(point_slice: PointSlice) -> dict:
    return {
        "g": point_slice.g,
        "points": [
            {"index": p.index, "coords": p.coords.tolist(),
             "fitness": p.fitness, "bin": p.bin, "is_parent": p.is_parent}
            for p in point_slice.points
        ],
    }


def _trace_json(trace: RolloutTrace) -> dict:
    actions = trace.actions
    frames = []
    for t in range(trace.states.shape[0]):
        action = actions[t].tolist() if actions.ndim > 1 else int(actions[t])
        frames.append({"t": t, "state": trace.states[t].tolist(),
                       "action": action, "reward": float(trace.rewards[t])})
    return {"frames": frames, "final_bc": trace.final_bc.tolist(),
            "fitness": trace.fitness}


def _offspring_spec_json(entry) -> dict:
    if isinstance(entry, OffspringRecord):
        return {"noise_seed": entry.noise_seed, "sign": entry.sign}
    return {"parent_index": entry.parent_index,
            "mutation_seed": entry.mutation_seed}


def _point_detail(session: Session, g: int, i: int) -> dict:
    record = session.records[g]
    if i == -1:
        fitness = float(record.parent_fitness)
        bc = np.asarray(record.parent_bc)
        spec = None
        rollout_seed = None
    else:
        entry = record.offspring[i]
        fitness = float(entry.fitness)
        bc = np.asarray(entry.bc)
        spec = _offspring_spec_json(entry)
        rollout_seed = entry.rollout_seed
    coords = {method: view.coords[g][i + 1].tolist()
              for method, view in sorted(session.views.items())}
    return {"g": g, "i": i, "fitness": fitness, "bc": bc.tolist(),
            "coords": coords, "spec": spec, "rollout_seed": rollout_seed,
            "is_parent": i == -1}


def load_sessions(run_dirs) -> dict[str, Session]:
    """Load every run directory, failing fast on unreadable ones."""
    sessions: dict[str, Session] = {}
    for run_dir in run_dirs:
        session = load_session(run_dir)
        run_id = session.run_id
        if run_id in sessions:
            raise ValueError(f"duplicate run_id {run_id!r} at {run_dir}")
        sessions[run_id] = session
    if not sessions:
        raise ValueError("no runs found")
    return sessions


def build_app(sessions: dict[str, Session], ui_dir=None) -> FastAPI:
    app = FastAPI(title="vine inspector")

    def _session(run_id: str) -> Session:
        try:
            return sessions[run_id]
        except KeyError:
            raise HTTPException(status_code=404,
                                detail=f"unknown run {run_id!r}") from None

    def _check_generation(session: Session, g: int) -> None:
        if not 0 <= g < session.generations:
            raise HTTPException(status_code=404,
                                detail=f"generation {g} out of range")

    @app.get("/runs")
    def list_runs():
        return [sessions[k].archive.manifest.to_json() for k in sorted(sessions)]

    @app.get("/runs/{run_id}/manifest")
    def manifest(run_id: str):
        return _session(run_id).archive.manifest.to_json()

    @app.get("/runs/{run_id}/views")
    def views(run_id: str):
        return {"views": sorted(_session(run_id).views)}

    @app.get("/runs/{run_id}/fitness")
    def fitness(run_id: str):
        session = _session(run_id)
        return {"parent_fitness": fitness_curve(session).tolist()}

    @app.get("/runs/{run_id}/generations/{g}")
    def generation(run_id: str, g: int, view: str):
        session = _session(run_id)
        _check_generation(session, g)
        try:
            return _slice_json(generation_points(session, g, view))
        except ValueError as exc:  # unknown view
            raise HTTPException(status_code=404, detail=str(exc)) from None

    @app.get("/runs/{run_id}/nearest/{g}")
    def nearest(run_id: str, g: int, view: str, x: float, y: float):
        session = _session(run_id)
        _check_generation(session, g)
        try:
            index = nearest_point(session, view, g, [x, y])
        except ValueError as exc:  # unknown view
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return {"index": index}

    @app.get("/runs/{run_id}/point/{g}/{i}")
    def point(run_id: str, g: int, i: int):
        session = _session(run_id)
        _check_generation(session, g)
        n = session.archive.manifest.population_size
        if not -1 <= i < n:
            raise HTTPException(status_code=404,
                                detail=f"point index {i} out of range")
        return _point_detail(session, g, i)

    @app.post("/runs/{run_id}/rollout")
    def rollout(run_id: str, request: RolloutReplayRequest):
        session = _session(run_id)
        try:
            traces = rollout_replay(session, request)
        except IndexError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return {"traces": [_trace_json(t) for t in traces]}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app


def parse_bind(bind: str) -> tuple[str, int]:
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must be host:port, got {bind!r}")
    return host, int(port)


def serve(run_dirs, bind: str = "127.0.0.1:8777", ui_dir=None) -> None:
    """Load the given runs and serve the endpoint set until shutdown."""
    import uvicorn

    host, port = parse_bind(bind)
    app = build_app(load_sessions(run_dirs), ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
