"""Reproduction drivers for the line sweep, cycle mixing and entanglement decay."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import circulant

from .. import observables as obs
from ..errors import InvalidConfig
from ..lattice import Lattice
from ..walk import NoiseModel, Target, WalkConfig, evolve, initial_state, step
from ._parallel import parallel_map
from .pure import pure_distributions


@dataclass(frozen=True)
class SweepRow:
    p: float
    tvd_final: float
    negativity_final: float
    sigma_final: float


def _sweep_point(args):
    T, target, p = args
    config = WalkConfig.line(T, target, p)
    rho = initial_state(config)
    for _ in range(T):
        rho = step(rho, config.noise)
    d = obs.position_distribution(rho)
    return SweepRow(
        p=float(p),
        tvd_final=obs.tvd(d, obs.top_hat_reference(T, config.lattice)),
        negativity_final=obs.negativity(rho),
        sigma_final=obs.std_dev(d),
    )


def sweep_noise(T, target, p_grid, jobs=1):
    """Final TVD to the top hat, negativity and spread of a `T`-step line walk per `p`.

    Rows come back in grid order for any `jobs`.
    """
    target = Target.parse(target)
    grid = [float(p) for p in p_grid]
    if any(not 0.0 <= p <= 1.0 for p in grid):
        raise InvalidConfig("noise rates must lie in [0, 1]")
    if grid != sorted(grid):
        raise InvalidConfig("p_grid must be sorted ascending")
    return parallel_map(_sweep_point, [(T, target, p) for p in grid], jobs)


def first_step_below(values, threshold, start=0):
    """First index ``t >= start`` with ``values[t] < threshold``, or None."""
    values = np.asarray(values)[start:]
    hits = np.flatnonzero(values < threshold)
    return int(hits[0]) + start if len(hits) else None


@dataclass
class CycleRun:
    series: obs.ObservableSeries
    mixing: obs.MixingResult
    mixing_averaged: obs.MixingResult

    @property
    def averaged_tvd(self):
        # averaged TVD starts at T = 1; pad t = 0 with the instantaneous value
        return np.concatenate(([self.series.tvd[0]], self.mixing_averaged.tvd))[
            : len(self.series)
        ]


def cycle_mixing_run(N, target, p, horizon, epsilon=None):
    """Evolve on a cycle of size `N` and measure mixing against the uniform distribution.

    Parameters
    ----------
    N : int
        Cycle size; odd for a uniform limit.
    target : Target or str
    p : float
    horizon : int
        Number of steps, at least `N`.
    epsilon : float, optional
        Mixing threshold in unhalved TVD; defaults to ``1/N``.

    Returns
    -------
    CycleRun
        Series (TVD to uniform, negativity, distributions) plus the
        instantaneous and time-averaged mixing results.
    """
    if horizon < N:
        raise InvalidConfig(f"horizon {horizon} must be at least N={N}")
    epsilon = 1.0 / N if epsilon is None else epsilon
    config = WalkConfig.cycle(N, horizon, target, p)
    ref = obs.uniform(config.lattice)
    series, _ = evolve(config, ("tvd", "negativity", "distribution"), reference=ref)
    inst = obs.mixing_time(series.distributions, ref, epsilon)
    avg = obs.mixing_time(series.distributions, ref, epsilon, averaged=True)
    return CycleRun(series, inst, avg)


def walk_mixing_time(N, target, p, epsilon, horizon, averaged=False):
    """Mixing time on a cycle, tracking only the distributions (no negativity).

    The p = 0 case uses the state-vector path.
    """
    lattice = Lattice.cycle(N)
    config = WalkConfig(lattice, horizon, noise=NoiseModel(target, p))
    if p == 0.0:
        rows = pure_distributions(config)
    else:
        series, _ = evolve(config, ("distribution",))
        rows = np.array([d.probs for d in series.distributions])
    if averaged:
        rows = np.cumsum(rows, axis=0) / np.arange(1, len(rows) + 1)[:, None]
    values = np.abs(rows - 1.0 / N).sum(axis=1)
    m, _ = obs.mixing_time_from_tvd(values, epsilon, start=1 if averaged else 0)
    return m


def _decay_point(args):
    T, target, p = args
    series, _ = evolve(WalkConfig.line(T, target, p), ("negativity",))
    return series.negativity


def negativity_decay_run(T, p_values, target=Target.BOTH, jobs=1):
    """Negativity ``E(t)``, ``t = 0..T``, of a line walk for each noise rate.

    Returns a dict keyed by `p` in input order.
    """
    if T < 1:
        raise InvalidConfig(f"T must be >= 1, got {T}")
    target = Target.parse(target)
    p_values = [float(p) for p in p_values]
    rows = parallel_map(_decay_point, [(T, target, p) for p in p_values], jobs)
    return dict(zip(p_values, rows))


def time_averaged_pure_cycle(N, T):
    """Time average over ``t = 0..T-1`` of the pure walk on a cycle from site 0."""
    rows = pure_distributions(WalkConfig.cycle(N, T))
    return rows[:T].mean(axis=0)


def warm_start_distribution(N, T, restarts):
    """Distribution after `restarts` warm restarts of a time-averaged pure walk.

    Each restart begins where the previous run was measured. The walk is
    translation invariant on the cycle, so restarting from a sampled site is
    a circular convolution with the single-run distribution ``Q``.
    """
    if N % 2 == 0:
        raise InvalidConfig(f"warm start needs an odd cycle, got N={N}")
    if T < 1 or restarts < 0:
        raise InvalidConfig("need T >= 1 and restarts >= 0")
    q = time_averaged_pure_cycle(N, T)
    kernel = circulant(q)  # kernel @ v convolves v with q modulo N
    out = q.copy()
    for _ in range(restarts):
        out = kernel @ out
    out = np.clip(out, 0.0, None)
    return obs.Distribution(Lattice.cycle(N), out / out.sum())
