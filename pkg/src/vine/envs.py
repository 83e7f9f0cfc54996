"""Built-in desk-scale tasks and their policy networks.

Two environments are provided: a continuous point-mass walker whose BC is
its final (x, y) position, and a grid collection game whose BC is a
128-entry integer state vector. Deterministic rollouts are pure functions
of (env_id, params); stochastic rollouts are pure functions of
(env_id, params, rollout_seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import grid_rollout, walker_rollout
from ._seeds import rng_from
from ._validation import check_vector


@dataclass(frozen=True)
class PolicySpec:
    """Layer sizes of a fully-connected tanh policy, input to output."""

    layer_sizes: tuple[int, ...]

    def __post_init__(self):
        if len(self.layer_sizes) < 2 or any(s < 1 for s in self.layer_sizes):
            raise ValueError(f"invalid layer sizes {self.layer_sizes}")

    @property
    def parameter_count(self) -> int:
        sizes = self.layer_sizes
        return sum((nin + 1) * nout for nin, nout in zip(sizes[:-1], sizes[1:]))


def policy_forward(spec: PolicySpec, params, observation) -> np.ndarray:
    """Forward pass consuming parameters in layer-major, row-major order.

    Per layer: (in x out) weights then out biases, tanh on every layer.
    """
    params = check_vector(params, name="params", length=spec.parameter_count)
    h = check_vector(observation, name="observation", length=spec.layer_sizes[0])
    offset = 0
    for nin, nout in zip(spec.layer_sizes[:-1], spec.layer_sizes[1:]):
        w = params[offset:offset + nin * nout].reshape(nin, nout)
        b = params[offset + nin * nout:offset + (nin + 1) * nout]
        h = np.tanh(h @ w + b)
        offset += (nin + 1) * nout
    return h


@dataclass(frozen=True, eq=False)
class EvalResult:
    """Outcome of one evaluation episode."""

    fitness: float
    bc: np.ndarray
    rollout_seed: int


@dataclass(eq=False)
class RolloutTrace:
    """Time-indexed trajectory of one episode.

    states holds one post-step state snapshot per step, so the last row is
    the state the BC is computed from.
    """

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    final_bc: np.ndarray
    fitness: float

    @property
    def frames(self):
        """Time-ordered (step index, state, action, reward) tuples."""
        return [
            (t, self.states[t], self.actions[t], float(self.rewards[t]))
            for t in range(self.states.shape[0])
        ]


@dataclass(eq=False)
class RolloutRequest:
    env_id: str
    params: np.ndarray
    stochastic: bool = False
    rollout_seed: int = 0
    record_trajectory: bool = False


def trajectory_bc(trace: RolloutTrace | None) -> np.ndarray:
    """Concatenated per-step (x, y), flattened in time order."""
    if trace is None or trace.states.shape[0] == 0:
        raise ValueError("trajectory absent: rollout was not recorded")
    return trace.states[:, :2].astype(np.float64).ravel()


class PointWalker:
    """Point mass on the plane, driven by a 2-D acceleration policy.

    1000 steps of pos += dt*vel then vel = damping*vel + gain*action with
    actions clipped to [-1, 1]^2. Fitness is the final distance from the
    origin; the BC is the final (x, y).
    """

    env_id = "point_walker"
    policy_spec = PolicySpec((4, 16, 16, 2))
    bc_dimension = 2
    episode_steps = 1000
    dt = 0.05
    damping = 0.9
    gain = 1.0
    action_noise_stdev = 0.1

    def __init__(self):
        self._sizes = np.array(self.policy_spec.layer_sizes, dtype=np.int64)

    def rollout(self, params, *, stochastic=False, rollout_seed=0,
                record_trajectory=False):
        params = np.ascontiguousarray(
            check_vector(params, name="params",
                         length=self.policy_spec.parameter_count))
        steps = self.episode_steps
        if stochastic:
            noise = rng_from(rollout_seed).standard_normal((steps, 2))
            noise *= self.action_noise_stdev
        else:
            noise = np.zeros((steps, 2))
        states, actions, rewards = walker_rollout(
            params, self._sizes, steps, self.dt, self.damping, self.gain, noise)
        x = states[-1, 0]
        y = states[-1, 1]
        bc = np.array([x, y])
        fitness = math.sqrt(x * x + y * y)
        result = EvalResult(fitness=fitness, bc=bc, rollout_seed=rollout_seed)
        if not record_trajectory:
            return result, None
        trace = RolloutTrace(states=states, actions=actions, rewards=rewards,
                             final_bc=bc, fitness=fitness)
        return result, trace


class GridQuest:
    """Collection game on a 16x16 grid with 8 fixed collectibles.

    200 steps, 5 actions (stay/up/down/left/right) chosen by argmax of the
    policy output with ties to the lowest action index. Fitness is 10 per
    collectible gathered. The BC is (x, y, 8 collected flags, score, steps
    elapsed) zero-padded to 128 integers. Observations are the normalized
    agent position plus the 8 collected flags.
    """

    env_id = "grid_quest"
    policy_spec = PolicySpec((10, 32, 5))
    bc_dimension = 128
    episode_steps = 200
    grid_size = 16
    start = (8, 8)
    collectibles = ((2, 2), (2, 13), (13, 2), (13, 13),
                    (4, 8), (8, 4), (12, 8), (8, 12))
    action_replace_prob = 0.05

    def __init__(self):
        self._sizes = np.array(self.policy_spec.layer_sizes, dtype=np.int64)
        self._coll_x = np.array([c[0] for c in self.collectibles], dtype=np.int64)
        self._coll_y = np.array([c[1] for c in self.collectibles], dtype=np.int64)

    def rollout(self, params, *, stochastic=False, rollout_seed=0,
                record_trajectory=False):
        params = np.ascontiguousarray(
            check_vector(params, name="params",
                         length=self.policy_spec.parameter_count))
        steps = self.episode_steps
        if stochastic:
            rng = rng_from(rollout_seed)
            replace_mask = rng.random(steps) < self.action_replace_prob
            replace_actions = rng.integers(0, 5, size=steps)
        else:
            replace_mask = np.zeros(steps, dtype=bool)
            replace_actions = np.zeros(steps, dtype=np.int64)
        states, actions, rewards = grid_rollout(
            params, self._sizes, steps, self.start[0], self.start[1],
            self._coll_x, self._coll_y, replace_mask, replace_actions)
        bc = np.zeros(128, dtype=np.int64)
        bc[:12] = states[-1]
        fitness = float(states[-1, 10])
        result = EvalResult(fitness=fitness, bc=bc, rollout_seed=rollout_seed)
        if not record_trajectory:
            return result, None
        trace = RolloutTrace(states=states, actions=actions, rewards=rewards,
                             final_bc=bc, fitness=fitness)
        return result, trace


ENVIRONMENTS = {
    PointWalker.env_id: PointWalker(),
    GridQuest.env_id: GridQuest(),
}


def get_environment(env_id: str):
    try:
        return ENVIRONMENTS[env_id]
    except KeyError:
        raise ValueError(f"unknown env_id {env_id!r}, "
                         f"expected one of {sorted(ENVIRONMENTS)}") from None


def rollout(request: RolloutRequest):
    """Run one episode as described by the request.

    Returns (EvalResult, RolloutTrace | None); the trace is present when
    record_trajectory was set.
    """
    env = get_environment(request.env_id)
    return env.rollout(request.params,
                       stochastic=request.stochastic,
                       rollout_seed=request.rollout_seed,
                       record_trajectory=request.record_trajectory)
