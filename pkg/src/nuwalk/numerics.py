"""Dense complex-matrix helpers.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
eigenvalue routine is a thin, checked wrapper over LAPACK's Hermitian solver.
"""

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10


def as_matrix(m):
    """Return `m` as a square, finite complex128 array.

    Raises
    ------
    DimensionMismatch
        If `m` is not a non-empty square 2-D array.
    ValueError
        If any entry is NaN or infinite.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def hermiticity_error(m):
    """Largest entrywise deviation ``max |m[i,j] - conj(m[j,i])|``."""
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_eigenvalues(m):
    """Eigenvalues of a Hermitian matrix, sorted ascending.

    Parameters
    ----------
    m : array_like, shape (d, d)
        Hermitian within ``HERMITIAN_TOL`` on every entry.

    Returns
    -------
    numpy.ndarray, shape (d,)
        Real eigenvalues in ascending order.

    Raises
    ------
    NotHermitian
        If the Hermiticity precondition is violated.
    ConvergenceFailure
        If LAPACK fails to converge.
    """
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {err:.3e}")
    try:
        # eigvalsh reads only the lower triangle; returns ascending order.
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def conjugate_by(u, m):
    """Return ``u @ m @ u^dagger`` for a unitary `u`."""
    u = as_matrix(u)
    m = as_matrix(m)
    if u.shape != m.shape:
        raise DimensionMismatch(f"u has shape {u.shape}, m has shape {m.shape}")
    dev = np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0])))
    if dev > UNITARY_TOL:
        raise ValueError(f"u is not unitary (deviation {dev:.3e})")
    return u @ m @ u.conj().T
