"""Monte-Carlo unravelling of the noisy step into pure-state trajectories.

Each step applies ``S C`` to every trajectory; then, with probability ``p``,
the chosen target is measured projectively and the state collapses onto the
sampled outcome. Averaging the trajectories' position probabilities
estimates the density-matrix distribution.

Random streams
--------------
Trajectories are processed in fixed blocks of :data:`BLOCK` trajectories.
Block ``k`` draws from ``default_rng(SeedSequence(seed, spawn_key=(k,)))``
and, at every step, consumes ``random(B)`` for the measurement events and
then ``random(B)`` for the outcomes (used as ``1 - u``), in that order, whether or not any
trajectory is measured. A block's stream therefore depends only on
``(seed, k)``, so results do not depend on worker count or scheduling.
"""

import numpy as np

from ..observables import Distribution
from ..walk import Target
from ._parallel import parallel_map
from .pure import PureState, position_probs, unitary_step

BLOCK = 4096


def _block_rng(seed, k):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(k,)))


def _sample(weights, u):
    """Sample one outcome per row of `weights` with uniforms `u`; return its index."""
    cum = np.cumsum(weights, axis=1)
    cum /= cum[:, -1:]
    idx = np.sum(cum < u[:, None], axis=1)
    return np.minimum(idx, weights.shape[1] - 1)


def measure(a, target, u):
    """Projectively measure `target` on a batch ``a`` of shape ``(B, n, 2)``."""
    B, n, _ = a.shape
    rows = np.arange(B)
    prob = np.abs(a) ** 2
    out = np.zeros_like(a)
    if target is Target.POSITION:
        x = _sample(prob.sum(axis=2), u)
        out[rows, x, :] = a[rows, x, :]
    elif target is Target.COIN:
        c = _sample(prob.sum(axis=1), u)
        out[rows, :, c] = a[rows, :, c]
    else:
        j = _sample(prob.reshape(B, 2 * n), u)
        x, c = np.divmod(j, 2)
        out[rows, x, c] = a[rows, x, c]
    norm = np.sqrt(np.sum(np.abs(out) ** 2, axis=(1, 2)))
    return out / norm[:, None, None]


def _run_block(args):
    config, seed, k, size = args
    rng = _block_rng(seed, k)
    lattice = config.lattice
    p = config.noise.rate
    target = config.noise.target
    a = np.broadcast_to(PureState.initial(config).amplitudes, (size, lattice.n_positions, 2))
    a = np.array(a)
    for _ in range(config.steps):
        a = unitary_step(a, lattice)
        events = rng.random(size) < p
        u = 1.0 - rng.random(size)  # (0, 1]: never selects a zero-weight outcome
        if np.any(events):
            a[events] = measure(a[events], target, u[events])
    return position_probs(a).sum(axis=0)


def trajectory_oracle(config, samples, seed=0, jobs=1):
    """Sampled estimate of the position distribution after ``config.steps`` steps.

    Parameters
    ----------
    config : WalkConfig
    samples : int
        Number of trajectories, at least 1.
    seed : int
        Root seed; the output is bit-identical for a fixed seed.
    jobs : int
        Worker processes; does not change the result.

    Returns
    -------
    Distribution
        Mean over trajectories of each trajectory's final position
        probabilities.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    blocks = [
        (config, seed, k, min(BLOCK, samples - k * BLOCK))
        for k in range((samples + BLOCK - 1) // BLOCK)
    ]
    total = np.zeros(config.lattice.n_positions)
    for part in parallel_map(_run_block, blocks, jobs):
        total += part
    probs = total / samples
    return Distribution(config.lattice, probs / probs.sum())
