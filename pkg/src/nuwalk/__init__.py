"""Coined quantum walks on the line and the cycle under projective noise."""

from .errors import (
    BoundaryOverflow,
    ConvergenceFailure,
    InvalidConfig,
    NotHermitian,
    NumericalCorruption,
    NumericalError,
    WalkError,
)
from .lattice import Lattice
from .numerics import conjugate_by, hermitian_eigenvalues
from .observables import (
    Distribution,
    MixingResult,
    ObservableSeries,
    mixing_time,
    negativity,
    partial_transpose,
    position_distribution,
    std_dev,
    time_averaged,
    top_hat_reference,
    tvd,
    uniform,
)
from .walk import (
    DensityOperator,
    NoiseModel,
    Target,
    WalkConfig,
    apply_coin,
    apply_shift,
    dephase,
    evolve,
    initial_state,
    step,
)

__version__ = "0.1.0"
