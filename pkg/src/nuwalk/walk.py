"""Density-matrix evolution of the coined walk with projective noise.

One step maps ``rho`` to ``(1-p) U rho U^dag + p * Dephase(U rho U^dag)`` with
``U = S C``. Every operator is applied by its sparse action on the
``(n, 2, n, 2)`` block view of the matrix: a 2x2 contraction for the coin, an
index roll for the shift and a mask for dephasing. Nothing builds a ``d x d``
operator, so a step costs O(d^2).
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np

from . import observables as obs
from .errors import BoundaryOverflow, InvalidConfig, NumericalCorruption
from .lattice import Lattice
from .numerics import hermitian_eigenvalues, hermiticity_error

log = logging.getLogger(__name__)

SQRT_HALF = 1.0 / np.sqrt(2.0)

# C|x,c> = (|x,-c> + c|x,c>)/sqrt 2, columns indexed by the input coin (0 <-> -1).
COIN = SQRT_HALF * np.array([[-1.0, 1.0], [1.0, 1.0]], dtype=np.complex128)

DEFAULT_COIN = (SQRT_HALF + 0j, 1j * SQRT_HALF)

DRIFT_LIMIT = 1e-8
STATE_TOL = 1e-10


class Target(str, enum.Enum):
    COIN = "coin"
    POSITION = "position"
    BOTH = "both"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidConfig(
                f"noise target must be one of coin, position, both; got {value!r}"
            ) from None


@dataclass(frozen=True)
class NoiseModel:
    target: Target = Target.POSITION
    rate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "target", Target.parse(self.target))
        if not 0.0 <= self.rate <= 1.0:
            raise InvalidConfig(f"noise rate p must lie in [0, 1], got {self.rate}")


@dataclass(frozen=True)
class WalkConfig:
    lattice: Lattice
    steps: int
    noise: NoiseModel = NoiseModel()
    initial_position: int = 0
    initial_coin: tuple = DEFAULT_COIN

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 0:
            raise InvalidConfig(f"steps must be a non-negative integer, got {self.steps}")
        if self.lattice.is_line:
            if self.steps + abs(self.initial_position) > self.lattice.size:
                raise InvalidConfig(
                    f"{self.steps} steps from x={self.initial_position} would reach past "
                    f"the line horizon {self.lattice.size}"
                )
        self.lattice.offset(self.initial_position)
        a, b = self.initial_coin
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidConfig(f"initial coin has norm^2 {norm!r}, expected 1")

    @classmethod
    def line(cls, steps, target="position", p=0.0, **kw):
        return cls(Lattice.line(max(steps, 1)), steps, NoiseModel(target, p), **kw)

    @classmethod
    def cycle(cls, size, steps, target="position", p=0.0, **kw):
        return cls(Lattice.cycle(size), steps, NoiseModel(target, p), **kw)


class DensityOperator:
    """Density matrix over the ``|x, c>`` basis of a lattice.

    The matrix is treated as immutable once wrapped; operations return new
    instances. Invariants are checked on demand by :meth:`validate`.
    """

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice, matrix):
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (lattice.dim, lattice.dim):
            raise InvalidConfig(f"matrix shape {matrix.shape} does not match {lattice}")
        self.lattice = lattice
        self.matrix = matrix

    @classmethod
    def from_pure(cls, lattice, amplitudes):
        psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        return cls(lattice, np.outer(psi, psi.conj()))

    @property
    def dim(self):
        return self.lattice.dim

    def blocks(self):
        """View of the matrix as ``rho[x, c, y, b]``."""
        n = self.lattice.n_positions
        return self.matrix.reshape(n, 2, n, 2)

    def trace(self):
        return complex(np.trace(self.matrix))

    def purity(self):
        # trace(rho^2) = sum |rho_ij|^2 for Hermitian rho
        return float(np.sum(np.abs(self.matrix) ** 2))

    def min_eigenvalue(self):
        return float(hermitian_eigenvalues(self.matrix)[0])

    def validate(self, tol=STATE_TOL):
        """Raise NumericalCorruption unless trace, Hermiticity, PSD and purity hold."""
        tr = self.trace()
        if abs(tr - 1.0) > tol:
            raise NumericalCorruption(f"trace is {tr!r}")
        herm = hermiticity_error(self.matrix)
        if herm > tol:
            raise NumericalCorruption(f"Hermiticity error {herm:.3e}")
        lam = self.min_eigenvalue()
        if lam < -tol:
            raise NumericalCorruption(f"minimum eigenvalue {lam:.3e}")
        pur = self.purity()
        if not 1.0 / self.dim - tol <= pur <= 1.0 + tol:
            raise NumericalCorruption(f"purity {pur!r} out of range")
        return self

    def __add__(self, other):
        return DensityOperator(self.lattice, self.matrix + other.matrix)

    def __mul__(self, a):
        return DensityOperator(self.lattice, a * self.matrix)

    __rmul__ = __mul__

    def __repr__(self):
        return f"DensityOperator({self.lattice}, dim={self.dim})"


def initial_state(config):
    """Rank-one state ``|x0> (alpha|-1> + beta|+1>)``."""
    psi = np.zeros(config.lattice.dim, dtype=np.complex128)
    i = config.lattice.index(config.initial_position, -1)
    psi[i], psi[i + 1] = config.initial_coin
    return DensityOperator.from_pure(config.lattice, psi)


def _support(b, lattice):
    """Slice over storage positions that covers every non-zero row.

    On a line, a walker started from one site occupies a single parity class,
    so the slice usually has stride 2. On a cycle the full range is returned.
    """
    n = lattice.n_positions
    if lattice.is_cycle:
        return slice(0, n, 1)
    rows = np.flatnonzero(np.any(b != 0, axis=(1, 2, 3)))
    if len(rows) == 0:
        return slice(0, 0, 1)
    lo, hi = int(rows[0]), int(rows[-1]) + 1
    stride = 2 if np.all((rows - lo) % 2 == 0) and len(rows) > 1 else 1
    return slice(lo, hi, stride)


def _coin_blocks(sub):
    # C is real symmetric, so left and right multiplication share one formula
    s = SQRT_HALF
    left = np.stack(((sub[:, 1] - sub[:, 0]) * s, (sub[:, 0] + sub[:, 1]) * s), axis=1)
    return np.stack(
        ((left[..., 1] - left[..., 0]) * s, (left[..., 0] + left[..., 1]) * s), axis=-1
    )


def apply_coin(rho):
    """``C rho C^dag``, applied as a 2x2 block action on the occupied sites."""
    b = rho.blocks()
    sl = _support(b, rho.lattice)
    out = np.zeros_like(b)
    out[sl, :, sl, :] = _coin_blocks(b[sl, :, sl, :])
    return DensityOperator(rho.lattice, out.reshape(rho.matrix.shape))


def _check_boundary(b, lattice):
    """A line walker at the edge with its coin pointing outward has nowhere to go."""
    edge = max(np.max(np.abs(b[0, 0])), np.max(np.abs(b[-1, 1])))
    if edge > 0.0:
        raise BoundaryOverflow(
            f"support would leave {lattice} (edge amplitude {edge:.3e}); "
            "steps must not exceed the line horizon"
        )


def apply_shift(rho):
    """``S rho S^dag`` with ``S|x,c> = |x+c,c>``; wraps modulo N on a cycle."""
    b = rho.blocks()
    out = np.zeros_like(b)
    if rho.lattice.is_cycle:
        # roll row and column position indices by each coin's displacement
        for c, dc in enumerate((-1, 1)):
            for e, de in enumerate((-1, 1)):
                out[:, c, :, e] = np.roll(b[:, c, :, e], (dc, de), axis=(0, 1))
        return DensityOperator(rho.lattice, out.reshape(rho.matrix.shape))

    _check_boundary(b, rho.lattice)
    sl = _support(b, rho.lattice)
    sub = b[sl, :, sl, :]
    k = sub.shape[0]
    if k == 0:
        return DensityOperator(rho.lattice, out.reshape(rho.matrix.shape))
    # In units of the stride, c=-1 lands at offset 0 and c=+1 at offset `up`
    # on a grid that starts one site below the old support.
    up = 2 // sl.step
    ext = np.zeros((k + up, 2, k + up, 2), dtype=b.dtype)
    offs = (0, up)
    for c in (0, 1):
        for e in (0, 1):
            ext[offs[c] : offs[c] + k, c, offs[e] : offs[e] + k, e] = sub[:, c, :, e]
    first = sl.start - 1
    pos = first + sl.step * np.arange(k + up)
    # grid points off the lattice carry zeros by the boundary check
    inside = (pos >= 0) & (pos < rho.lattice.n_positions)
    j0, j1 = np.flatnonzero(inside)[[0, -1]]
    new = slice(int(pos[j0]), int(pos[j1]) + 1, sl.step)
    out[new, :, new, :] = ext[j0 : j1 + 1, :, j0 : j1 + 1, :]
    return DensityOperator(rho.lattice, out.reshape(rho.matrix.shape))


def _dephase_matrix(m, n, target):
    b = m.reshape(n, 2, n, 2)
    out = np.zeros_like(b)
    if target is Target.POSITION:
        idx = np.arange(n)
        out[idx, :, idx, :] = b[idx, :, idx, :]
    elif target is Target.COIN:
        out[:, 0, :, 0] = b[:, 0, :, 0]
        out[:, 1, :, 1] = b[:, 1, :, 1]
    else:
        out = out.reshape(m.shape)
        np.fill_diagonal(out, np.diagonal(m))
    return out.reshape(m.shape)


def dephase(rho, target):
    """Complete projective measurement of the coin, the position, or both."""
    target = Target.parse(target)
    n = rho.lattice.n_positions
    return DensityOperator(rho.lattice, _dephase_matrix(rho.matrix, n, target))


def raw_step(rho, noise):
    """One step of the noisy walk without drift correction.

    Dephasing keeps the measured-diagonal entries and scales every other
    entry by ``1 - p``, which is the convex mixture written entrywise.
    """
    u = apply_shift(apply_coin(rho))
    p = noise.rate
    if p == 0.0:
        return u
    b = u.blocks()
    sl = _support(b, rho.lattice)
    sub = b[sl, :, sl, :]
    idx = np.arange(sub.shape[0])
    if noise.target is Target.COIN:
        kept = [sub[:, c, :, c].copy() for c in (0, 1)]
        sub *= 1.0 - p
        for c in (0, 1):
            sub[:, c, :, c] = kept[c]
    elif noise.target is Target.POSITION:
        kept = sub[idx, :, idx, :].copy()
        sub *= 1.0 - p
        sub[idx, :, idx, :] = kept
    else:
        kept = [sub[idx, c, idx, c].copy() for c in (0, 1)]
        sub *= 1.0 - p
        for c in (0, 1):
            sub[idx, c, idx, c] = kept[c]
    return u


def step(rho, noise):
    """One step, then re-symmetrise and renormalise the trace.

    Raises
    ------
    NumericalCorruption
        If trace or Hermiticity drift before correction exceeds 1e-8.
    """
    out = raw_step(rho, noise)
    b = out.blocks()
    sl = _support(b, rho.lattice)
    sub = b[sl, :, sl, :]
    k = sub.shape[0]
    m = sub.reshape(2 * k, 2 * k)
    tr = np.trace(m)
    herm = hermiticity_error(m) if k else 0.0
    drift = max(abs(tr - 1.0), herm)
    if drift > DRIFT_LIMIT:
        raise NumericalCorruption(f"step drift {drift:.3e} exceeds {DRIFT_LIMIT:.0e}")
    if drift > 1e-12:
        log.debug("correcting step drift %.3e", drift)
    m = (0.5 / np.real(tr)) * (m + m.conj().T)
    b[sl, :, sl, :] = m.reshape(sub.shape)
    return out


OBSERVABLES = ("sigma", "tvd", "negativity", "distribution")


def reference_for(lattice, t):
    """Default TVD reference: the top hat on a line, uniform on a cycle."""
    if lattice.is_line:
        return obs.top_hat_reference(t, lattice)
    return obs.uniform(lattice)


def evolve(config, observers=("sigma", "tvd", "negativity"), reference=None, callback=None):
    """Run ``config.steps`` noisy steps, recording observables at ``t = 0..T``.

    Parameters
    ----------
    config : WalkConfig
    observers : iterable of str
        Any of ``"sigma"``, ``"tvd"``, ``"negativity"``, ``"distribution"``.
        ``sigma`` is skipped (NaN) on a cycle.
    reference : Distribution or callable, optional
        TVD reference, fixed or as ``reference(t)``. Defaults to
        :func:`reference_for`.
    callback : callable, optional
        Called as ``callback(t, rho)`` after each recorded step.

    Returns
    -------
    (ObservableSeries, DensityOperator)
    """
    observers = set(observers)
    unknown = observers - set(OBSERVABLES)
    if unknown:
        raise InvalidConfig(f"unknown observables {sorted(unknown)}")
    lattice = config.lattice
    if reference is None:
        ref = lambda t: reference_for(lattice, t)  # noqa: E731
    elif callable(reference):
        ref = reference
    else:
        ref = lambda t: reference  # noqa: E731

    T = config.steps
    sigma = np.full(T + 1, np.nan)
    tv = np.full(T + 1, np.nan)
    neg = np.full(T + 1, np.nan)
    dists = [] if "distribution" in observers else None

    rho = initial_state(config)
    for t in range(T + 1):
        if t > 0:
            rho = step(rho, config.noise)
        d = obs.position_distribution(rho)
        if "sigma" in observers and lattice.is_line:
            sigma[t] = obs.std_dev(d)
        if "tvd" in observers:
            tv[t] = obs.tvd(d, ref(t))
        if "negativity" in observers:
            neg[t] = obs.negativity(rho)
        if dists is not None:
            dists.append(d)
        if callback is not None:
            callback(t, rho)
    series = obs.ObservableSeries(np.arange(T + 1), sigma, tv, neg, dists)
    return series, rho
