"""Durable run storage.

A run directory holds `manifest.json` plus one line-delimited text file per
generation (`gen_00000.jsonl`, ...). Line 1 of a generation file is the
parent record, lines 2..n+1 the offspring records. Offspring parameters are
never stored; they are reconstructed exactly from (seed, sign) or, for GA
runs, from (parent index, mutation seed) chains anchored at periodic
full-parameter checkpoints.

Floats are encoded as shortest round-trip decimals and keys are sorted, so
identical records always serialize to identical bytes.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._genomes import mutate_genome, offspring_params
from .envs import PolicySpec

MANIFEST_NAME = "manifest.json"
GA_CHECKPOINT_INTERVAL = 25


class ArchiveError(Exception):
    """Base class for archive failures."""


class MissingManifestError(ArchiveError):
    pass


class OutOfOrderError(ArchiveError):
    pass


class CorruptRecordError(ArchiveError):
    def __init__(self, message, *, generation, line_number):
        super().__init__(message)
        self.generation = generation
        self.line_number = line_number


def generation_filename(g: int) -> str:
    return f"gen_{g:05d}.jsonl"


@dataclass
class RunManifest:
    run_id: str
    algo: str  # "es" | "ga"
    env_id: str
    config: dict
    bc_dimension: int
    layer_sizes: list[int]
    generations_completed: int = 0
    complete: bool = False

    def to_json(self) -> dict:
        return {
            "run_id": self.run_id,
            "algo": self.algo,
            "env_id": self.env_id,
            "config": self.config,
            "bc_dimension": self.bc_dimension,
            "layer_sizes": list(self.layer_sizes),
            "generations_completed": self.generations_completed,
            "complete": self.complete,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RunManifest":
        return cls(run_id=obj["run_id"], algo=obj["algo"], env_id=obj["env_id"],
                   config=obj["config"], bc_dimension=obj["bc_dimension"],
                   layer_sizes=list(obj["layer_sizes"]),
                   generations_completed=obj["generations_completed"],
                   complete=obj["complete"])

    @property
    def population_size(self) -> int:
        return int(self.config["population_size"])


@dataclass(eq=False)
class OffspringRecord:
    """ES offspring: identified by its perturbation seed and mirror sign."""

    noise_seed: int
    sign: int
    fitness: float
    bc: np.ndarray
    rollout_seed: int


@dataclass(eq=False)
class GaMemberRecord:
    """GA member: identified by its parent index and mutation seed.

    mutation_seed is None for elite copies; parent_index is None for the
    seeded initial population (whose parent is the zero genome).
    """

    parent_index: int | None
    mutation_seed: int | None
    fitness: float
    bc: np.ndarray
    rollout_seed: int


@dataclass(eq=False)
class GenerationRecord:
    g: int
    parent_params: np.ndarray | None
    parent_fitness: float
    parent_bc: np.ndarray
    offspring: list
    champion_index: int | None = None  # GA: index of the best member
    member_params: list | None = None  # GA: full checkpoint of all genomes


def dumps_canonical(obj) -> str:
    """Sorted keys, no whitespace, shortest round-trip floats."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _atomic_write(path: Path, data: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(data)
    os.replace(tmp, path)


def _parent_line(record: GenerationRecord) -> dict:
    line = {
        "g": record.g,
        "parent_params": None if record.parent_params is None
        else np.asarray(record.parent_params).tolist(),
        "parent_fitness": float(record.parent_fitness),
        "parent_bc": np.asarray(record.parent_bc).tolist(),
    }
    if record.champion_index is not None:
        line["champion_index"] = record.champion_index
    if record.member_params is not None:
        line["member_params"] = [np.asarray(m).tolist() for m in record.member_params]
    return line


def _offspring_line(entry) -> dict:
    if isinstance(entry, OffspringRecord):
        return {"noise_seed": entry.noise_seed, "sign": entry.sign,
                "fitness": float(entry.fitness),
                "bc": np.asarray(entry.bc).tolist(),
                "rollout_seed": entry.rollout_seed}
    return {"parent_index": entry.parent_index,
            "mutation_seed": entry.mutation_seed,
            "fitness": float(entry.fitness),
            "bc": np.asarray(entry.bc).tolist(),
            "rollout_seed": entry.rollout_seed}


def encode_generation(record: GenerationRecord) -> str:
    lines = [dumps_canonical(_parent_line(record))]
    lines.extend(dumps_canonical(_offspring_line(e)) for e in record.offspring)
    return "\n".join(lines) + "\n"


class RunWriter:
    """Single writer for one run directory.

    The manifest is created immediately with complete=False and only
    flipped by finalize(), so an interrupted run is always flagged
    incomplete. Generation files and the manifest are written to a temp
    name and renamed into place.
    """

    def __init__(self, run_dir, manifest: RunManifest):
        self.run_dir = Path(run_dir)
        self.run_dir.mkdir(parents=True, exist_ok=True)
        self.manifest = manifest
        self._write_manifest()

    def _write_manifest(self) -> None:
        _atomic_write(self.run_dir / MANIFEST_NAME,
                      dumps_canonical(self.manifest.to_json()) + "\n")

    def write_generation(self, record: GenerationRecord) -> None:
        expected = self.manifest.generations_completed
        if record.g != expected:
            raise OutOfOrderError(
                f"expected generation {expected}, got {record.g}")
        path = self.run_dir / generation_filename(record.g)
        _atomic_write(path, encode_generation(record))
        self.manifest.generations_completed += 1
        self._write_manifest()

    def finalize(self) -> None:
        self.manifest.complete = True
        self._write_manifest()


def _parse_generation(path: Path, g: int, manifest: RunManifest) -> GenerationRecord:
    algo = manifest.algo
    offspring = []
    parent = None
    with path.open() as fh:
        for ln, raw in enumerate(fh, start=1):
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorruptRecordError(
                    f"corrupt record in generation {g}, line {ln}: {exc.msg}",
                    generation=g, line_number=ln) from exc
            if ln == 1:
                parent = obj
            else:
                offspring.append(obj)
    if parent is None or len(offspring) != manifest.population_size:
        raise CorruptRecordError(
            f"generation {g} has {len(offspring)} offspring records, "
            f"expected {manifest.population_size}",
            generation=g, line_number=len(offspring) + 1)
    entries = []
    for ln, obj in enumerate(offspring, start=2):
        bc = np.asarray(obj["bc"])
        if bc.shape[0] != manifest.bc_dimension:
            raise CorruptRecordError(
                f"generation {g} line {ln}: bc length {bc.shape[0]} != "
                f"{manifest.bc_dimension}", generation=g, line_number=ln)
        if algo == "es":
            entries.append(OffspringRecord(
                noise_seed=obj["noise_seed"], sign=obj["sign"],
                fitness=obj["fitness"], bc=bc,
                rollout_seed=obj["rollout_seed"]))
        else:
            entries.append(GaMemberRecord(
                parent_index=obj["parent_index"],
                mutation_seed=obj["mutation_seed"],
                fitness=obj["fitness"], bc=bc,
                rollout_seed=obj["rollout_seed"]))
    return GenerationRecord(
        g=parent["g"],
        parent_params=None if parent["parent_params"] is None
        else np.asarray(parent["parent_params"], dtype=np.float64),
        parent_fitness=parent["parent_fitness"],
        parent_bc=np.asarray(parent["parent_bc"]),
        offspring=entries,
        champion_index=parent.get("champion_index"),
        member_params=None if parent.get("member_params") is None
        else [np.asarray(m, dtype=np.float64) for m in parent["member_params"]])


def _complete_lines(path: Path) -> int:
    """Number of newline-terminated lines; a partial trailing line is ignored."""
    count = 0
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            count += chunk.count(b"\n")
    return count


class RunArchive:
    """Read view over a run directory.

    Generation records parse lazily; readability (file present with the
    expected record count) is checked once at load so truncated tails are
    flagged without failing the whole run.
    """

    def __init__(self, run_dir, manifest: RunManifest, generations_readable: int):
        self.run_dir = Path(run_dir)
        self.manifest = manifest
        self.generations_readable = generations_readable

    @property
    def complete(self) -> bool:
        return (self.manifest.complete
                and self.generations_readable == self.manifest.generations_completed)

    def read_generation(self, g: int) -> GenerationRecord:
        if not 0 <= g < self.generations_readable:
            raise IndexError(
                f"generation {g} out of range [0, {self.generations_readable})")
        return _parse_generation(self.run_dir / generation_filename(g), g,
                                 self.manifest)

    def iter_generations(self):
        for g in range(self.generations_readable):
            yield self.read_generation(g)

    @property
    def parameter_count(self) -> int:
        return PolicySpec(tuple(self.manifest.layer_sizes)).parameter_count


def read_run(run_dir) -> RunArchive:
    run_dir = Path(run_dir)
    manifest_path = run_dir / MANIFEST_NAME
    if not manifest_path.is_file():
        raise MissingManifestError(f"no {MANIFEST_NAME} in {run_dir}")
    manifest = RunManifest.from_json(json.loads(manifest_path.read_text()))
    expected_lines = manifest.population_size + 1
    readable = 0
    for g in range(manifest.generations_completed):
        path = run_dir / generation_filename(g)
        if not path.is_file() or _complete_lines(path) != expected_lines:
            break
        readable = g + 1
    return RunArchive(run_dir, manifest, readable)


def reconstruct_params(run: RunArchive, g: int, i: int) -> np.ndarray:
    """Rebuild the exact parameter vector evaluated as offspring i of
    generation g."""
    record = run.read_generation(g)
    n = run.manifest.population_size
    if not 0 <= i < n:
        raise IndexError(f"offspring index {i} out of range [0, {n})")
    if run.manifest.algo == "es":
        entry = record.offspring[i]
        sigma = float(run.manifest.config["noise_stdev"])
        return offspring_params(record.parent_params, entry.noise_seed,
                                entry.sign, sigma)
    return _reconstruct_ga_population(run, g)[i]


def _reconstruct_ga_population(run: RunArchive, g: int) -> list:
    stdev = float(run.manifest.config["mutation_stdev"])
    d = run.parameter_count
    anchor = g
    records = {}
    while True:
        rec = records[anchor] = run.read_generation(anchor)
        if rec.member_params is not None:
            break
        if anchor == 0:
            raise ArchiveError("no checkpoint found at or before generation 0")
        anchor -= 1
    members = [m.copy() for m in records[anchor].member_params]
    zero = np.zeros(d)
    for gg in range(anchor + 1, g + 1):
        rec = records[gg]
        rebuilt = []
        for entry in rec.offspring:
            parent = zero if entry.parent_index is None else members[entry.parent_index]
            if entry.mutation_seed is None:
                rebuilt.append(parent.copy())
            else:
                rebuilt.append(mutate_genome(parent, entry.mutation_seed, stdev))
        members = rebuilt
    return members
