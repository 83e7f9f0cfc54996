"""Compiled inner loops for policy networks and environment dynamics.

Training-time evaluation and replay both call these kernels, so an offspring
reconstructed from its seeds reproduces its archived fitness and BC bit for
bit. Accumulation order inside the kernels is fixed; keep it that way.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def mlp_forward(params, sizes, obs):
    """Fully-connected tanh network on a flat parameter vector.

    Per layer the block is the (in x out) weight matrix in row-major order
    followed by the out biases; tanh is applied at every layer.
    """
    h = obs
    offset = 0
    for li in range(sizes.shape[0] - 1):
        nin = sizes[li]
        nout = sizes[li + 1]
        out = np.empty(nout)
        bias_at = offset + nin * nout
        for j in range(nout):
            s = params[bias_at + j]
            for i in range(nin):
                s += h[i] * params[offset + i * nout + j]
            out[j] = math.tanh(s)
        h = out
        offset = bias_at + nout
    return h


@njit(cache=True)
def walker_rollout(params, sizes, n_steps, dt, damping, gain, action_noise):
    """Point-mass walker episode.

    Per step: observe (x, y, vx, vy), act, then pos += dt*vel followed by
    vel = damping*vel + gain*action. Actions are clipped to [-1, 1] after
    noise. Rewards are per-step gains in distance from the origin, so they
    sum to the final-distance fitness.
    """
    x = 0.0
    y = 0.0
    vx = 0.0
    vy = 0.0
    states = np.empty((n_steps, 4))
    actions = np.empty((n_steps, 2))
    rewards = np.empty(n_steps)
    obs = np.empty(4)
    prev_dist = 0.0
    for t in range(n_steps):
        obs[0] = x
        obs[1] = y
        obs[2] = vx
        obs[3] = vy
        out = mlp_forward(params, sizes, obs)
        ax = out[0] + action_noise[t, 0]
        ay = out[1] + action_noise[t, 1]
        if ax > 1.0:
            ax = 1.0
        elif ax < -1.0:
            ax = -1.0
        if ay > 1.0:
            ay = 1.0
        elif ay < -1.0:
            ay = -1.0
        x = x + dt * vx
        y = y + dt * vy
        vx = damping * vx + gain * ax
        vy = damping * vy + gain * ay
        dist = math.sqrt(x * x + y * y)
        states[t, 0] = x
        states[t, 1] = y
        states[t, 2] = vx
        states[t, 3] = vy
        actions[t, 0] = ax
        actions[t, 1] = ay
        rewards[t] = dist - prev_dist
        prev_dist = dist
    return states, actions, rewards


@njit(cache=True)
def grid_rollout(params, sizes, n_steps, start_x, start_y, coll_x, coll_y,
                 replace_mask, replace_actions):
    """Grid collection episode on a 16x16 board.

    Actions 0..4 = stay/up/down/left/right by argmax of the policy output
    (ties to the lowest index). A step's action may be replaced by a uniform
    random one via replace_mask/replace_actions. State rows are
    (x, y, 8 collected flags, score, steps elapsed).
    """
    x = start_x
    y = start_y
    collected = np.zeros(8, dtype=np.int64)
    score = 0
    states = np.empty((n_steps, 12), dtype=np.int64)
    actions = np.empty(n_steps, dtype=np.int64)
    rewards = np.empty(n_steps)
    obs = np.empty(10)
    for t in range(n_steps):
        obs[0] = x / 15.0
        obs[1] = y / 15.0
        for k in range(8):
            obs[2 + k] = collected[k]
        out = mlp_forward(params, sizes, obs)
        act = 0
        best = out[0]
        for j in range(1, 5):
            if out[j] > best:
                best = out[j]
                act = j
        if replace_mask[t]:
            act = replace_actions[t]
        if act == 1 and y < 15:
            y += 1
        elif act == 2 and y > 0:
            y -= 1
        elif act == 3 and x > 0:
            x -= 1
        elif act == 4 and x < 15:
            x += 1
        reward = 0.0
        for k in range(8):
            if collected[k] == 0 and x == coll_x[k] and y == coll_y[k]:
                collected[k] = 1
                score += 10
                reward = 10.0
        states[t, 0] = x
        states[t, 1] = y
        for k in range(8):
            states[t, 2 + k] = collected[k]
        states[t, 10] = score
        states[t, 11] = t + 1
        actions[t] = act
        rewards[t] = reward
    return states, actions, rewards
