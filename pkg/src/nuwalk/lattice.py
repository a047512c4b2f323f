"""Lattices and the flat (position, coin) basis indexing."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfig

LINE = "line"
CYCLE = "cycle"

# Coin index 0 holds c = -1 and index 1 holds c = +1, everywhere in the package.
COIN_VALUES = (-1, +1)


@dataclass(frozen=True)
class Lattice:
    """A finite line segment ``[-horizon, horizon]`` or a cycle ``Z_N``.

    Use :meth:`line` and :meth:`cycle` rather than the raw constructor.
    """

    kind: str
    size: int  # horizon T_max for a line, N for a cycle

    def __post_init__(self):
        if self.kind == LINE:
            if int(self.size) != self.size or self.size < 1:
                raise InvalidConfig(f"line horizon must be a positive integer, got {self.size}")
        elif self.kind == CYCLE:
            if int(self.size) != self.size or self.size < 3:
                raise InvalidConfig(f"cycle size must be an integer >= 3, got {self.size}")
        else:
            raise InvalidConfig(f"unknown lattice kind {self.kind!r}")

    @classmethod
    def line(cls, horizon):
        return cls(LINE, int(horizon))

    @classmethod
    def cycle(cls, size):
        return cls(CYCLE, int(size))

    @property
    def is_line(self):
        return self.kind == LINE

    @property
    def is_cycle(self):
        return self.kind == CYCLE

    @property
    def n_positions(self):
        return 2 * self.size + 1 if self.is_line else self.size

    @property
    def dim(self):
        return 2 * self.n_positions

    @property
    def positions(self):
        """Integer labels of the sites, in storage order."""
        if self.is_line:
            return np.arange(-self.size, self.size + 1)
        return np.arange(self.size)

    def offset(self, x):
        """Storage offset of position `x`."""
        if self.is_line:
            if not -self.size <= x <= self.size:
                raise InvalidConfig(f"position {x} outside line [-{self.size}, {self.size}]")
            return int(x) + self.size
        return int(x) % self.size

    def index(self, x, c):
        """Flat basis index of ``|x, c>`` with ``c`` in {-1, +1}."""
        if c not in COIN_VALUES:
            raise InvalidConfig(f"coin value must be -1 or +1, got {c}")
        return 2 * self.offset(x) + (0 if c == -1 else 1)

    def basis_label(self, i):
        """Inverse of :meth:`index`: the ``(x, c)`` pair at flat index `i`."""
        if not 0 <= i < self.dim:
            raise IndexError(i)
        return int(self.positions[i // 2]), COIN_VALUES[i % 2]

    def __str__(self):
        return f"line(T_max={self.size})" if self.is_line else f"cycle(N={self.size})"
