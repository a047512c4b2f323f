"""Measurement-derived quantities: distributions, spreading, TVD, mixing, negativity.

TVD follows the unhalved convention ``sum_x |a(x) - b(x)|`` throughout, so it
ranges over [0, 2] and every threshold (``epsilon``, the ``1/N`` line on the
cycle) is meant in that convention.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import CycleUnsupported, EmptySeries, InvalidEpsilon, LatticeMismatch
from .lattice import Lattice
from .numerics import hermitian_eigenvalues

NEGATIVE_CLAMP = 1e-14


@dataclass(frozen=True)
class Distribution:
    """Probability vector over the sites of a lattice, in storage order."""

    lattice: Lattice
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (self.lattice.n_positions,):
            raise ValueError(
                f"expected {self.lattice.n_positions} probabilities, got shape {p.shape}"
            )
        if np.any(p < -NEGATIVE_CLAMP):
            raise ValueError(f"negative probability {p.min():.3e}")
        p = np.clip(p, 0.0, None)
        if abs(p.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probs", p)

    @property
    def positions(self):
        return self.lattice.positions

    def at(self, x):
        return float(self.probs[self.lattice.offset(x)])


@dataclass
class ObservableSeries:
    """Per-step observables for ``t = 0 .. steps``.

    Fields that were not requested are left as NaN (or None for
    `distributions`).
    """

    t: np.ndarray
    sigma: np.ndarray
    tvd: np.ndarray
    negativity: np.ndarray
    distributions: Optional[list] = None

    def __len__(self):
        return len(self.t)


@dataclass(frozen=True)
class MixingResult:
    epsilon: float
    mixing_time: Optional[int]  # None means not reached within the horizon
    horizon: int
    averaged: bool
    tvd: np.ndarray = field(repr=False, default=None)

    @property
    def reached(self):
        return self.mixing_time is not None


def position_distribution(rho):
    """Position marginal of a density operator (coin summed out)."""
    diag = np.real(np.diagonal(rho.matrix))
    probs = diag.reshape(-1, 2).sum(axis=1)
    return Distribution(rho.lattice, np.clip(probs, 0.0, None))


def uniform(lattice):
    n = lattice.n_positions
    return Distribution(lattice, np.full(n, 1.0 / n))


def delta(lattice, x=0):
    p = np.zeros(lattice.n_positions)
    p[lattice.offset(x)] = 1.0
    return Distribution(lattice, p)


def std_dev(d):
    """Standard deviation of the position on a line, in lattice units."""
    if not d.lattice.is_line:
        raise CycleUnsupported("standard deviation is undefined on a cycle")
    x = d.positions.astype(float)
    mean = np.dot(x, d.probs)
    var = np.dot((x - mean) ** 2, d.probs)
    return float(np.sqrt(max(var, 0.0)))


def tvd(a, b):
    """Total variational distance without the conventional 1/2 factor."""
    if a.lattice != b.lattice:
        raise LatticeMismatch(f"{a.lattice} vs {b.lattice}")
    return float(np.abs(a.probs - b.probs).sum())


def top_hat_reference(T, lattice=None):
    """Uniform reference over ``|x| <= floor(T/sqrt 2)`` restricted to parity ``T mod 2``.

    The parity restriction matches the support of any walk started at the
    origin; without it the TVD to the walk could never drop below ~1.
    """
    lattice = lattice or Lattice.line(max(int(T), 1))
    if not lattice.is_line or lattice.size < T:
        raise LatticeMismatch(f"top hat for T={T} needs a line of horizon >= T, got {lattice}")
    x = lattice.positions
    # isqrt keeps floor(T/sqrt 2) exact: floor(sqrt(T^2/2)) = isqrt(T^2 // 2)
    width = math.isqrt(T * T // 2)
    # T = 1 would otherwise leave no odd site inside the window
    width = max(width, T % 2)
    mask = (np.abs(x) <= width) & ((x - T) % 2 == 0)
    p = mask / mask.sum()
    return Distribution(lattice, p)


def time_averaged(dists, T=None):
    """Mean of the first `T` distributions (all of them by default)."""
    dists = list(dists)
    if T is None:
        T = len(dists)
    if T < 1 or len(dists) < T:
        raise EmptySeries(f"need at least {max(T, 1)} distributions, have {len(dists)}")
    lattice = dists[0].lattice
    avg = np.mean([d.probs for d in dists[:T]], axis=0)
    return Distribution(lattice, avg / avg.sum())


def running_averages(dists):
    """Array whose row ``T-1`` is the time average through step ``T``, ``T = 1..len``."""
    arr = np.array([d.probs for d in dists])
    if len(arr) == 0:
        raise EmptySeries("no distributions")
    csum = np.cumsum(arr, axis=0)
    return csum / np.arange(1, len(arr) + 1)[:, None]


def mixing_time_from_tvd(values, epsilon, start=0):
    """Smallest ``T`` with ``values[t] < epsilon`` for all recorded ``t > T``.

    `values[k]` belongs to time ``start + k``. Returns ``(T, horizon)`` with
    ``T = None`` when the last recorded value still violates the bound.
    """
    if not 0 < epsilon < 2:
        raise InvalidEpsilon(f"epsilon must lie in (0, 2), got {epsilon}")
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        raise EmptySeries("no TVD values")
    horizon = start + len(values) - 1
    bad = np.flatnonzero(~(values < epsilon))
    if len(bad) == 0:
        return 0, horizon
    last = start + int(bad[-1])
    if last >= horizon:
        return None, horizon
    return last, horizon


def mixing_time(dists, reference, epsilon, averaged=False):
    """Mixing time of a recorded series of distributions.

    Parameters
    ----------
    dists : sequence of Distribution
        Distributions at steps ``0 .. horizon``.
    reference : Distribution
        Limiting distribution, usually :func:`uniform`.
    epsilon : float
        Threshold in (0, 2), unhalved TVD.
    averaged : bool
        Use the time-averaged distributions (``T = 1 .. len(dists)``)
        instead of the instantaneous ones.

    Returns
    -------
    MixingResult
        ``mixing_time`` is None when the bound is not reached; the
        quantifier over later times only covers the recorded horizon.
    """
    dists = list(dists)
    if not 0 < epsilon < 2:
        raise InvalidEpsilon(f"epsilon must lie in (0, 2), got {epsilon}")
    if not dists:
        raise EmptySeries("no distributions")
    for d in dists[:1]:
        if d.lattice != reference.lattice:
            raise LatticeMismatch(f"{d.lattice} vs {reference.lattice}")
    if averaged:
        rows = running_averages(dists)
        start = 1
    else:
        rows = np.array([d.probs for d in dists])
        start = 0
    values = np.abs(rows - reference.probs).sum(axis=1)
    m, horizon = mixing_time_from_tvd(values, epsilon, start=start)
    return MixingResult(epsilon, m, horizon, averaged, values)


def _blocks(rho):
    n = rho.lattice.n_positions
    return rho.matrix.reshape(n, 2, n, 2)


def partial_transpose(rho, subsystem="coin"):
    """Partial transpose of ``rho``; by default over the coin indices.

    ``subsystem="position"`` transposes the position indices instead; both
    choices share the same spectrum up to a full transpose.
    """
    b = _blocks(rho)
    if subsystem == "coin":
        out = b.transpose(0, 3, 2, 1)
    elif subsystem == "position":
        out = b.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'coin' or 'position', got {subsystem!r}")
    return np.ascontiguousarray(out).reshape(rho.matrix.shape)


def negativity(rho, subsystem="coin"):
    """Coin-position negativity ``(sum |lambda'| - 1) / 2``, clamped at zero."""
    pt = partial_transpose(rho, subsystem)
    # all-zero rows only contribute zero eigenvalues; drop them before solving
    keep = np.flatnonzero(np.any(pt != 0, axis=1))
    lam = hermitian_eigenvalues(pt[np.ix_(keep, keep)]) if len(keep) else np.zeros(0)
    return max(0.0, 0.5 * (float(np.abs(lam).sum()) - 1.0))
