"""Gate, qubit and ancilla counts for quantum and classical walks.

Counting model (all counts exact under these rules):

* position register width ``s = ceil(log2(2T + 1))`` on a line of ``T``
  steps, ``s = ceil(log2 N)`` on a cycle;
* every step costs one gate for the coin and ``s`` gates for the shift;
* a coin measurement costs 1 gate and 1 fresh ancilla, a position
  measurement ``s`` gates and ``s`` ancillae, a measurement of both
  ``s + 1`` of each; ancillae are never recycled;
* measurements are counted at their expected number ``p * steps``, rounded
  up to a whole event;
* qubits = 1 (coin) + ``s`` + ancillae.
"""

import math
from dataclasses import dataclass

from ..errors import InvalidMode
from ..walk import Target

# Asymptotic classes, keyed by (mode kind, noise family).
GATE_CLASS = {
    ("line", "coin"): "O(T log T + pT)",
    ("line", "position"): "O(T log T + pT log T)",
    ("cycle", "coin"): "O(M(ε) log N + pM(ε))",
    ("cycle", "position"): "O(M(ε) log N + pM(ε) log N)",
}
QUBIT_CLASS = {
    ("line", "coin"): "O(log T + pT)",
    ("line", "position"): "O(log T + pT log T)",
    ("cycle", "coin"): "O(log N + pM(ε))",
    ("cycle", "position"): "O(log N + pM(ε) log N)",
}

UPPER_BOUND_NOTE = (
    "position-measurement ancilla counts are an upper bound: the measured "
    "positions are not uniformly distributed, so fewer random bits are produced"
)


@dataclass(frozen=True)
class Line:
    T: int


@dataclass(frozen=True)
class Cycle:
    N: int
    mixing_steps: int  # M(epsilon), the number of steps actually run


@dataclass(frozen=True)
class ResourceEstimate:
    quantum_gates: int
    qubits: int
    ancillae: int
    counting_model: str
    steps: int = 0
    register_width: int = 0
    measurements: int = 0
    gate_class: str = ""
    qubit_class: str = ""
    note: str = ""


def register_width(mode):
    if isinstance(mode, Line):
        return math.ceil(math.log2(2 * mode.T + 1))
    return math.ceil(math.log2(mode.N))


def expected_measurements(p, steps):
    # round first so that, e.g., 0.07 * 100 counts as 7 and not 8
    return math.ceil(round(p * steps, 9))


def resource_estimate(mode, target, p):
    """Exact counts for a walk under the module's counting model.

    Parameters
    ----------
    mode : Line or Cycle
    target : Target or str
        Noise target; ``both`` is reported under the position table.
    p : float
        Noise rate in [0, 1].

    Returns
    -------
    ResourceEstimate
    """
    target = Target.parse(target)
    if not 0.0 <= p <= 1.0:
        raise InvalidMode(f"p must lie in [0, 1], got {p}")
    if isinstance(mode, Line):
        if mode.T < 1:
            raise InvalidMode(f"line walk needs T >= 1, got {mode.T}")
        steps, kind = mode.T, "line"
    elif isinstance(mode, Cycle):
        if mode.N < 3 or mode.mixing_steps < 1:
            raise InvalidMode(f"cycle needs N >= 3 and M >= 1, got {mode}")
        steps, kind = mode.mixing_steps, "cycle"
    else:
        raise InvalidMode(f"unknown mode {mode!r}")

    s = register_width(mode)
    per_event = {Target.COIN: 1, Target.POSITION: s, Target.BOTH: s + 1}[target]
    events = expected_measurements(p, steps)
    ancillae = events * per_event
    gates = steps * (1 + s) + events * per_event
    family = "coin" if target is Target.COIN else "position"
    return ResourceEstimate(
        quantum_gates=gates,
        qubits=1 + s + ancillae,
        ancillae=ancillae,
        counting_model=(
            f"s={s}; per step 1 coin gate + {s} shift gates; "
            f"{per_event} gate(s) and ancilla(e) per {target.value} measurement; "
            f"ceil(p*steps)={events} measurements"
        ),
        steps=steps,
        register_width=s,
        measurements=events,
        gate_class=GATE_CLASS[kind, family],
        qubit_class=QUBIT_CLASS[kind, family],
        note=UPPER_BOUND_NOTE if family == "position" and events else "",
    )


def classical_equivalent_steps(T):
    """Steps a classical walk needs to spread as far as a ``T``-step quantum walk.

    Matching ``sqrt(t) = sigma_Q(T)`` with ``sigma_Q ~ T / sqrt 2`` gives
    ``t = T^2 / 2``.
    """
    return T * T // 2


def classical_estimate(T):
    """Resources for the classical walk that matches a ``T``-step quantum walk."""
    return resource_estimate(Line(classical_equivalent_steps(T)), Target.COIN, 1.0)
