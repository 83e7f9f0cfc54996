"""ES perturbation/aggregation loop and a truncation-selection GA.

The ES keeps a single parent vector, evaluates a cloud of seed-keyed
perturbations each generation, and moves the parent along the
centered-rank-weighted sum of the noise. The GA keeps a population and
rebuilds it by elitism plus Gaussian mutation of uniformly chosen top-T
members. Both record every evaluation (fitness and BC) through an archive
writer, and every random draw is keyed so reruns are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from ._genomes import mutate_genome, offspring_params, perturbation
from ._seeds import (PARENT_INDEX, STREAM_GA_MUTATE, STREAM_GA_SELECT,
                     STREAM_GA_STEP, STREAM_INIT, STREAM_NOISE, STREAM_ROLLOUT,
                     derive_seed, rng_from)
from ._validation import check_vector
from .archive import (GA_CHECKPOINT_INTERVAL, GaMemberRecord, GenerationRecord,
                      OffspringRecord)
from .envs import get_environment

__all__ = [
    "EsConfig", "GaConfig", "OffspringSpec", "RunSummary",
    "centered_ranks", "perturbation", "es_update", "es_update_from_noise",
    "offspring_specs", "ga_step", "ga_step_detailed", "run_evolution",
]


@dataclass(frozen=True)
class EsConfig:
    population_size: int = 100
    noise_stdev: float = 0.05
    learning_rate: float = 0.03
    mirrored: bool = True
    generations: int = 200
    run_seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.mirrored and self.population_size % 2 != 0:
            raise ValueError("mirrored sampling needs an even population_size")
        if self.noise_stdev <= 0:
            raise ValueError("noise_stdev must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 50
    truncation_size: int = 10
    mutation_stdev: float = 0.05
    elite_count: int = 1
    generations: int = 200
    run_seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if not 1 <= self.truncation_size <= self.population_size:
            raise ValueError("truncation_size must be in [1, population_size]")
        if not 0 <= self.elite_count <= self.truncation_size:
            raise ValueError("elite_count must be in [0, truncation_size]")
        if self.mutation_stdev <= 0:
            raise ValueError("mutation_stdev must be positive")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")


@dataclass(frozen=True)
class OffspringSpec:
    """Identity of one ES offspring: its noise seed and mirror sign."""

    noise_seed: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class RunSummary:
    generations_completed: int
    final_parent_fitness: float


def centered_ranks(fitnesses) -> np.ndarray:
    """Map fitnesses to zero-sum rank weights in [-0.5, 0.5].

    Ascending average ranks r (ties share their mean rank) are mapped by
    r/(n-1) - 0.5; a single entry maps to 0. Invariant under any strictly
    monotone transform of the fitnesses.
    """
    f = check_vector(fitnesses, name="fitnesses")
    n = f.shape[0]
    if n == 0:
        raise ValueError("fitnesses must be non-empty")
    if n == 1:
        return np.zeros(1)
    ranks = rankdata(f, method="average") - 1.0
    return ranks / (n - 1) - 0.5


def es_update_from_noise(parent, noise, fitnesses, *, noise_stdev,
                         learning_rate) -> np.ndarray:
    """Parent + (alpha / (n * sigma)) * sum_i w_i * noise_i with
    w = centered_ranks(fitnesses)."""
    parent = check_vector(parent, name="parent")
    noise = np.asarray(noise, dtype=np.float64)
    w = centered_ranks(fitnesses)
    if noise.shape != (w.shape[0], parent.shape[0]):
        raise ValueError(f"noise shape {noise.shape} does not match "
                         f"{(w.shape[0], parent.shape[0])}")
    if np.all(w == 0.0):
        return parent.copy()
    step = (learning_rate / (w.shape[0] * noise_stdev)) * (w @ noise)
    return parent + step


def es_update(parent, specs, fitnesses, config: EsConfig) -> np.ndarray:
    """Aggregate one generation's offspring into the next parent."""
    parent = check_vector(parent, name="parent")
    fitnesses = check_vector(fitnesses, name="fitnesses")
    if len(specs) != len(fitnesses) or len(specs) != config.population_size:
        raise ValueError(
            f"got {len(specs)} specs and {len(fitnesses)} fitnesses for "
            f"population_size {config.population_size}")
    d = parent.shape[0]
    noise = np.stack([perturbation(s.noise_seed, d, s.sign) for s in specs])
    return es_update_from_noise(parent, noise, fitnesses,
                                noise_stdev=config.noise_stdev,
                                learning_rate=config.learning_rate)


def offspring_specs(config: EsConfig, generation: int) -> list[OffspringSpec]:
    """Seed-keyed offspring identities for one generation.

    Mirrored pairs (2k, 2k+1) share the noise seed of pair index k with
    opposite signs; seeds hash (run_seed, generation, pair index) so they
    are independent of evaluation order.
    """
    if config.mirrored:
        specs = []
        for k in range(config.population_size // 2):
            seed = derive_seed(config.run_seed, STREAM_NOISE, generation, k)
            specs.append(OffspringSpec(seed, 1))
            specs.append(OffspringSpec(seed, -1))
        return specs
    return [
        OffspringSpec(derive_seed(config.run_seed, STREAM_NOISE, generation, i), 1)
        for i in range(config.population_size)
    ]


def ga_step_detailed(population, config: GaConfig, step_seed: int):
    """One GA generation: elitism then mutation of uniformly chosen top-T.

    population is a sequence of (genome, fitness) pairs. Returns
    (next genomes, provenance) where provenance[i] is
    (parent_index, mutation_seed) with mutation_seed None for elite copies.
    """
    if len(population) == 0:
        raise ValueError("population must be non-empty")
    if len(population) != config.population_size:
        raise ValueError(f"population size {len(population)} != configured "
                         f"{config.population_size}")
    fitnesses = check_vector([f for _, f in population], name="fitnesses")
    order = sorted(range(len(population)), key=lambda i: (-fitnesses[i], i))
    top = order[:config.truncation_size]
    genomes = []
    provenance = []
    for rank in range(config.elite_count):
        src = order[rank]
        genomes.append(np.array(population[src][0], dtype=np.float64, copy=True))
        provenance.append((src, None))
    for child in range(config.elite_count, config.population_size):
        pick_rng = rng_from(derive_seed(step_seed, child, STREAM_GA_SELECT))
        src = top[int(pick_rng.integers(config.truncation_size))]
        mutation_seed = derive_seed(step_seed, child, STREAM_GA_MUTATE)
        parent = np.asarray(population[src][0], dtype=np.float64)
        genomes.append(mutate_genome(parent, mutation_seed, config.mutation_stdev))
        provenance.append((src, mutation_seed))
    return genomes, provenance


def ga_step(population, config: GaConfig, step_seed: int) -> list[np.ndarray]:
    genomes, _ = ga_step_detailed(population, config, step_seed)
    return genomes


def _rollout_seed(config, g: int, i: int) -> int:
    return derive_seed(config.run_seed, STREAM_ROLLOUT, g, i)


def run_evolution(env_id: str, config, writer) -> RunSummary:
    """Train on a task, recording every evaluation through the writer.

    The algorithm is selected by the config type. Evaluations are
    deterministic rollouts; each still gets a recorded seed derived from
    (run_seed, generation, index) so stochastic replays can be keyed later.
    """
    if isinstance(config, EsConfig):
        return _run_es(env_id, config, writer)
    if isinstance(config, GaConfig):
        return _run_ga(env_id, config, writer)
    raise TypeError(f"config must be EsConfig or GaConfig, got {type(config)}")


def _run_es(env_id: str, config: EsConfig, writer) -> RunSummary:
    env = get_environment(env_id)
    d = env.policy_spec.parameter_count
    parent = np.zeros(d)
    parent_fitness = float("nan")
    for g in range(config.generations):
        parent_eval, _ = env.rollout(
            parent, rollout_seed=_rollout_seed(config, g, PARENT_INDEX))
        specs = offspring_specs(config, g)
        entries = []
        fitnesses = np.empty(config.population_size)
        for i, spec in enumerate(specs):
            child = offspring_params(parent, spec.noise_seed, spec.sign,
                                     config.noise_stdev)
            seed = _rollout_seed(config, g, i)
            result, _ = env.rollout(child, rollout_seed=seed)
            fitnesses[i] = result.fitness
            entries.append(OffspringRecord(
                noise_seed=spec.noise_seed, sign=spec.sign,
                fitness=result.fitness, bc=result.bc, rollout_seed=seed))
        writer.write_generation(GenerationRecord(
            g=g, parent_params=parent.copy(),
            parent_fitness=parent_eval.fitness, parent_bc=parent_eval.bc,
            offspring=entries))
        parent = es_update(parent, specs, fitnesses, config)
        parent_fitness = parent_eval.fitness
    writer.finalize()
    return RunSummary(config.generations, parent_fitness)


def _run_ga(env_id: str, config: GaConfig, writer) -> RunSummary:
    env = get_environment(env_id)
    d = env.policy_spec.parameter_count
    zero = np.zeros(d)
    provenance = [(None, derive_seed(config.run_seed, STREAM_INIT, i))
                  for i in range(config.population_size)]
    members = [mutate_genome(zero, seed, config.mutation_stdev)
               for _, seed in provenance]
    champion_fitness = float("nan")
    for g in range(config.generations):
        entries = []
        fitnesses = np.empty(config.population_size)
        for i, genome in enumerate(members):
            seed = _rollout_seed(config, g, i)
            result, _ = env.rollout(genome, rollout_seed=seed)
            fitnesses[i] = result.fitness
            parent_index, mutation_seed = provenance[i]
            entries.append(GaMemberRecord(
                parent_index=parent_index, mutation_seed=mutation_seed,
                fitness=result.fitness, bc=result.bc, rollout_seed=seed))
        champion = int(np.argmax(fitnesses))
        checkpoint = g % GA_CHECKPOINT_INTERVAL == 0
        writer.write_generation(GenerationRecord(
            g=g, parent_params=None,
            parent_fitness=float(fitnesses[champion]),
            parent_bc=entries[champion].bc,
            offspring=entries,
            champion_index=champion,
            member_params=[m.copy() for m in members] if checkpoint else None))
        champion_fitness = float(fitnesses[champion])
        if g + 1 < config.generations:
            step_seed = derive_seed(config.run_seed, STREAM_GA_STEP, g)
            members, provenance = ga_step_detailed(
                list(zip(members, fitnesses)), config, step_seed)
    writer.finalize()
    return RunSummary(config.generations, champion_fitness)
