import numpy as np
import pytest

from nuwalk import DensityOperator, Lattice, Target


def random_state(lattice, rng, rank=None, support=None):
    """Random density operator, optionally confined to ``|x| <= support`` on a line."""
    n = lattice.n_positions
    rank = rank or int(rng.integers(1, 4))
    g = rng.normal(size=(lattice.dim, rank)) + 1j * rng.normal(size=(lattice.dim, rank))
    if support is not None:
        x = np.repeat(lattice.positions, 2)
        g[np.abs(x) > support] = 0
    m = g @ g.conj().T
    m /= np.trace(m).real
    assert m.shape == (2 * n, 2 * n)
    return DensityOperator(lattice, m)


def state_corpus(count, seed=1234):
    """Mixed bag of random states on short lines (away from the edges) and small cycles."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        if k % 2 == 0:
            lat = Lattice.line(int(rng.integers(3, 7)))
            out.append(random_state(lat, rng, support=lat.size - 1))
        else:
            lat = Lattice.cycle(int(rng.integers(3, 8)))
            out.append(random_state(lat, rng))
    return out


# Dense brute-force operators, built independently of the package's sparse actions.


def dense_shift(lattice):
    d = lattice.dim
    S = np.zeros((d, d))
    for i in range(d):
        x, c = lattice.basis_label(i)
        y = x + c
        if lattice.is_cycle:
            y %= lattice.size
        elif abs(y) > lattice.size:
            continue
        S[lattice.index(y, c), i] = 1.0
    return S


def dense_coin(lattice):
    # C|x,c> = (|x,-c> + c|x,c>)/sqrt 2
    d = lattice.dim
    C = np.zeros((d, d))
    for i in range(d):
        x, c = lattice.basis_label(i)
        C[lattice.index(x, -c), i] += 1 / np.sqrt(2)
        C[lattice.index(x, c), i] += c / np.sqrt(2)
    return C


def projectors(lattice, target):
    d = lattice.dim
    n = lattice.n_positions
    eye = np.eye(d)
    if target is Target.BOTH:
        return [np.outer(eye[i], eye[i]) for i in range(d)]
    if target is Target.POSITION:
        return [np.kron(np.outer(np.eye(n)[k], np.eye(n)[k]), np.eye(2)) for k in range(n)]
    return [np.kron(np.eye(n), np.outer(np.eye(2)[c], np.eye(2)[c])) for c in range(2)]


def dense_step(rho, target, p):
    lat = rho.lattice
    U = dense_shift(lat) @ dense_coin(lat)
    u = U @ rho.matrix @ U.conj().T
    deph = sum(P @ u @ P.conj().T for P in projectors(lat, target))
    return (1 - p) * u + p * deph


def dense_partial_transpose_coin(m, n):
    out = np.zeros_like(m)
    for x in range(n):
        for y in range(n):
            for c in range(2):
                for b in range(2):
                    out[2 * x + c, 2 * y + b] = m[2 * x + b, 2 * y + c]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# One line per acceptance criterion, repeated in the terminal summary.
ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    def emit(criterion, ok, detail):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
