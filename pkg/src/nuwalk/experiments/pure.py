"""State-vector walks: the p = 0 fast path and the kernel of the trajectory oracle.

Amplitudes are stored as arrays of shape ``(..., n_positions, 2)`` so a whole
batch of trajectories steps at once.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import BoundaryOverflow, InvalidConfig
from ..lattice import Lattice
from ..observables import Distribution
from ..walk import SQRT_HALF, DensityOperator


@dataclass(frozen=True)
class PureState:
    lattice: Lattice
    amplitudes: np.ndarray  # shape (n_positions, 2)

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=np.complex128)
        if a.shape != (self.lattice.n_positions, 2):
            a = a.reshape(self.lattice.n_positions, 2)
        norm = float(np.sum(np.abs(a) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise InvalidConfig(f"pure state has norm^2 {norm!r}")
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def initial(cls, config):
        a = np.zeros((config.lattice.n_positions, 2), dtype=np.complex128)
        a[config.lattice.offset(config.initial_position)] = config.initial_coin
        return cls(config.lattice, a)

    def density(self):
        return DensityOperator.from_pure(self.lattice, self.amplitudes.reshape(-1))

    def distribution(self):
        return Distribution(self.lattice, position_probs(self.amplitudes))


def position_probs(a):
    return np.sum(np.abs(a) ** 2, axis=-1)


def coin_toss(a):
    s = SQRT_HALF
    out = np.empty_like(a)
    out[..., 0] = (a[..., 1] - a[..., 0]) * s
    out[..., 1] = (a[..., 0] + a[..., 1]) * s
    return out


def shift(a, lattice):
    out = np.empty_like(a)
    if lattice.is_line and (np.any(a[..., 0, 0] != 0) or np.any(a[..., -1, 1] != 0)):
        raise BoundaryOverflow(f"support would leave {lattice}")
    out[..., 0] = np.roll(a[..., 0], -1, axis=-1)
    out[..., 1] = np.roll(a[..., 1], 1, axis=-1)
    return out


def unitary_step(a, lattice):
    return shift(coin_toss(a), lattice)


def pure_distributions(config):
    """Position distributions of the noiseless walk at ``t = 0 .. config.steps``.

    Ignores ``config.noise``; use only for p = 0.
    """
    a = PureState.initial(config).amplitudes
    out = np.empty((config.steps + 1, config.lattice.n_positions))
    out[0] = position_probs(a)
    for t in range(1, config.steps + 1):
        a = unitary_step(a, config.lattice)
        out[t] = position_probs(a)
    return out
