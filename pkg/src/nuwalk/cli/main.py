"""Command dispatch and the process-level exit-code contract.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.
Output files are written atomically, so a failed run leaves nothing behind.
"""

import os
import sys

import numpy as np

from .. import experiments as ex
from .. import observables as obs
from ..errors import NumericalError, WalkError
from ..walk import WalkConfig, evolve
from .config import parse_config
from .output import ResultTable, atomic_write, render_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def _walk_config(cfg, steps=None):
    steps = cfg.steps if steps is None else steps
    if cfg.lattice == "line":
        return WalkConfig.line(steps, cfg.target, cfg.p)
    return WalkConfig.cycle(cfg.size, steps, cfg.target, cfg.p)


def _simulate(cfg):
    config = _walk_config(cfg)
    series, _ = evolve(config, ("sigma", "tvd", "negativity"))
    rows = [
        [int(t), series.sigma[t], series.tvd[t], series.negativity[t]] for t in series.t
    ]
    ref = "top hat of width floor(t/sqrt 2), parity t" if cfg.lattice == "line" else "uniform"
    return ResultTable(
        ["t", "sigma", "tvd", "negativity"],
        rows,
        provenance=[f"lattice {config.lattice}, noise {cfg.target} p={cfg.p}", f"tvd reference: {ref}"],
    )


def _sweep(cfg):
    result = ex.sweep_noise(cfg.steps, cfg.target, cfg.p_grid(), jobs=cfg.jobs)
    rows = [[r.p, r.tvd_final, r.negativity_final, r.sigma_final] for r in result]
    best = min(result, key=lambda r: r.tvd_final)
    zero = next((r.p for r in result if r.negativity_final < 1e-3), None)
    return ResultTable(
        ["p", "tvd_final", "negativity_final", "sigma_final"],
        rows,
        provenance=[f"line walk, T={cfg.steps}, noise {cfg.target}, tvd against the top hat"],
        summary=[f"argmin_p_tvd={best.p!r}", f"first_p_negativity_below_1e-3={zero!r}"],
    )


def _mixing(cfg):
    N = cfg.size
    horizon = cfg.horizon or 10 * N
    eps = cfg.epsilon if cfg.epsilon is not None else 1.0 / N
    run = ex.cycle_mixing_run(N, cfg.target, cfg.p, horizon, epsilon=eps)
    s = run.series
    avg = run.averaged_tvd
    rows = [[int(t), s.tvd[t], avg[t], s.negativity[t]] for t in s.t]
    summary = [
        f"epsilon={eps!r}",
        f"horizon={horizon}",
        f"M={run.mixing.mixing_time if run.mixing.reached else 'not_reached'}",
        f"M_averaged={run.mixing_averaged.mixing_time if run.mixing_averaged.reached else 'not_reached'}",
    ]
    if cfg.restarts:
        warm = ex.warm_start_distribution(N, horizon, cfg.restarts)
        summary.append(
            f"warm_start restarts={cfg.restarts} tvd_to_uniform={obs.tvd(warm, obs.uniform(warm.lattice))!r}"
        )
    return ResultTable(
        ["t", "tvd", "tvd_averaged", "negativity"],
        rows,
        provenance=[f"cycle N={N}, noise {cfg.target} p={cfg.p}, tvd against uniform"],
        summary=summary,
    )


def _decay(cfg):
    rates = cfg.decay_rates()
    curves = ex.negativity_decay_run(cfg.steps, rates, cfg.target, jobs=cfg.jobs)
    cols = ["t"] + [f"negativity_p={p!r}" for p in curves]
    rows = [[t] + [curves[p][t] for p in curves] for t in range(cfg.steps + 1)]
    return ResultTable(cols, rows, provenance=[f"line walk, noise {cfg.target}"])


def _resources(cfg):
    if cfg.lattice == "line":
        mode = ex.Line(cfg.steps)
    else:
        mode = ex.Cycle(cfg.size, cfg.horizon or cfg.steps)
    est = ex.resource_estimate(mode, cfg.target, cfg.p)
    cols = ["quantum_gates", "qubits", "ancillae", "steps", "register_width", "measurements"]
    row = [est.quantum_gates, est.qubits, est.ancillae, est.steps, est.register_width, est.measurements]
    prov = [
        f"counting model: {est.counting_model}",
        f"gates class: {est.gate_class}",
        f"qubits class: {est.qubit_class}",
    ]
    if est.note:
        prov.append(f"note: {est.note}")
    if cfg.lattice == "line":
        cols.append("classical_equivalent_steps")
        row.append(ex.classical_equivalent_steps(cfg.steps))
    return ResultTable(cols, [row], provenance=prov)


def _oracle_check(cfg):
    config = _walk_config(cfg)
    series, _ = evolve(config, ("distribution",))
    exact = series.distributions[-1]
    sampled = ex.trajectory_oracle(config, cfg.samples, seed=cfg.seed, jobs=cfg.jobs)
    rows = [
        [int(x), e, s, abs(e - s)]
        for x, e, s in zip(exact.positions, exact.probs, sampled.probs)
    ]
    return ResultTable(
        ["x", "p_exact", "p_sampled", "abs_diff"],
        rows,
        provenance=[
            f"{cfg.samples} trajectories, seed {cfg.seed}",
            f"tvd(exact, sampled)={obs.tvd(exact, sampled)!r}",
        ],
    )


COMMANDS = {
    "simulate": _simulate,
    "sweep": _sweep,
    "mixing": _mixing,
    "decay": _decay,
    "resources": _resources,
    "oracle-check": _oracle_check,
}


def run(cfg, timestamp=None):
    """Execute `cfg`; write the CSV (and SVG) and return ``(table, csv_text)``."""
    table = COMMANDS[cfg.command](cfg)
    text = render_csv(table, cfg.echo(), timestamp=timestamp)
    svg = None
    if cfg.plot:
        from .plot import render_svg

        svg = render_svg(table, title=f"nuwalk {cfg.command}")
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        # render everything first so a failure cannot leave half the outputs
        atomic_write(cfg.out, text)
        if svg is not None:
            try:
                atomic_write(os.path.splitext(cfg.out)[0] + ".svg", svg)
            except BaseException:
                os.unlink(cfg.out)
                raise
    return table, text


def main(argv=None):
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        np.seterr(all="ignore")
        run(cfg)
    except NumericalError as exc:
        print(f"nuwalk: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except WalkError as exc:
        # every non-numerical library error traces back to the configuration
        print(f"nuwalk: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def entry_point():
    sys.exit(main())
