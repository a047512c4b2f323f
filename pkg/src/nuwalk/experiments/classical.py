"""Exact classical random walk, the oracle for every fully-dephased claim."""

import numpy as np

from ..errors import InvalidConfig
from ..lattice import Lattice
from ..observables import Distribution, mixing_time_from_tvd


def classical_probs(lattice, T, start=0):
    """Rows ``P_t`` for ``t = 0..T`` under ``P'(x) = (P(x-1) + P(x+1)) / 2``."""
    if T < 0:
        raise InvalidConfig(f"T must be >= 0, got {T}")
    if lattice.is_line and T + abs(start) > lattice.size:
        raise InvalidConfig(f"{T} steps do not fit on {lattice}")
    n = lattice.n_positions
    P = np.zeros(n)
    P[lattice.offset(start)] = 1.0
    out = np.empty((T + 1, n))
    out[0] = P
    for t in range(1, T + 1):
        if lattice.is_cycle:
            P = 0.5 * (np.roll(P, 1) + np.roll(P, -1))
        else:
            Q = np.zeros(n)
            Q[1:] += 0.5 * P[:-1]
            Q[:-1] += 0.5 * P[1:]
            P = Q
        out[t] = P
    return out


def classical_baseline(lattice, T):
    """Distribution of the symmetric classical walk after `T` steps from the origin."""
    return Distribution(lattice, classical_probs(lattice, T)[-1])


def classical_mixing_time(N, epsilon, horizon=None):
    """Instantaneous mixing time of the classical walk on an odd cycle."""
    lattice = Lattice.cycle(N)
    horizon = horizon or 10 * N * N
    rows = classical_probs(lattice, horizon)
    values = np.abs(rows - 1.0 / N).sum(axis=1)
    m, _ = mixing_time_from_tvd(values, epsilon)
    return m
