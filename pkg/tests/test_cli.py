import csv
import importlib
import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import nuwalk.walk
from nuwalk import errors
cli_main = importlib.import_module("nuwalk.cli.main")
from nuwalk.cli.config import parse_config
from nuwalk.cli.main import main, run
from nuwalk.cli.output import ResultTable, body_lines, format_value, render_csv


def data_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(io.StringIO("\n".join(lines)))
    header = next(reader)
    return header, list(reader)


def summary(text):
    out = {}
    for ln in text.splitlines():
        if ln.startswith("# summary "):
            k, v = ln[len("# summary "):].split("=", 1)
            out[k] = v
    return out


# --- parsing -----------------------------------------------------------------------


def test_parse_example():
    cfg = parse_config("simulate --lattice line --steps 100 --noise position --p 0.04".split())
    assert (cfg.command, cfg.lattice, cfg.steps, cfg.target, cfg.p) == (
        "simulate", "line", 100, "position", 0.04,
    )


def test_p_out_of_range(capsys):
    assert main(["simulate", "--p", "1.5"]) == 2
    err = capsys.readouterr().err
    assert "--p" in err and "[0, 1]" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--steps", "-1"],
        ["mixing"],  # needs a cycle
        ["mixing", "--lattice", "cycle", "--horizon", "5"],
        ["sweep", "--p-min", "0.3", "--p-max", "0.1"],
        ["decay", "--p-values", "0.1,x"],
        ["simulate", "--epsilon", "3"],
        ["simulate", "--plot"],
        ["oracle-check", "--samples", "0"],
        ["simulate", "--jobs", "0"],
        ["teleport"],
        ["simulate", "--steps", "ten"],
    ],
)
def test_invalid_configs_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "nuwalk" in capsys.readouterr().err


def test_config_file_precedence(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# defaults for a short run\nsteps = 50\np-min=0.01\nnoise=coin\n")
    cfg = parse_config(["simulate", "--config", str(f), "--steps", "100"])
    assert cfg.steps == 100
    assert cfg.p_min == 0.01
    assert cfg.target == "coin"
    assert parse_config(["simulate", "--config", str(f)]).steps == 50


def test_config_file_unknown_key(tmp_path, capsys):
    f = tmp_path / "run.cfg"
    f.write_text("steps=5\ncolour=blue\n")
    assert main(["simulate", "--config", str(f)]) == 2
    assert "colour" in capsys.readouterr().err


def test_config_file_bad_value(tmp_path, capsys):
    f = tmp_path / "run.cfg"
    f.write_text("steps=many\n")
    assert main(["simulate", "--config", str(f)]) == 2
    assert "steps" in capsys.readouterr().err


def test_default_targets():
    assert parse_config(["decay"]).target == "both"
    assert parse_config(["simulate"]).target == "position"


# --- output contracts ------------------------------------------------------------------


def test_simulate_zero_steps(capsys):
    assert main(["simulate", "--steps", "0"]) == 0
    header, rows = data_rows(capsys.readouterr().out)
    assert header == ["t", "sigma", "tvd", "negativity"]
    assert len(rows) == 1 and rows[0][0] == "0"


def test_sweep_row_count_and_order(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--steps", "6", "--p-count", "41", "--out", str(out)]) == 0
    text = out.read_text()
    header, rows = data_rows(text)
    assert header == ["p", "tvd_final", "negativity_final", "sigma_final"]
    assert len(rows) == 41
    ps = [float(r[0]) for r in rows]
    assert ps == sorted(ps) and ps[0] == 0.0 and ps[-1] == 0.2
    assert "argmin_p_tvd" in summary(text)


def test_provenance_header(capsys):
    main(["simulate", "--steps", "2"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# nuwalk ")
    assert lines[1].startswith("# generated ")
    assert any("unhalved" in ln for ln in lines if ln.startswith("#"))
    assert any(ln.startswith("# config ") and "steps=2" in ln for ln in lines)


def _body(argv):
    table, text = run(parse_config(argv))
    return body_lines(text)


def test_identical_runs_identical_bodies():
    argv = ["oracle-check", "--steps", "5", "--noise", "coin", "--p", "0.3", "--samples", "5000", "--seed", "4"]
    assert _body(argv) == _body(argv)


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--steps", "8", "--p-count", "5"],
        ["decay", "--steps", "8"],
        ["oracle-check", "--lattice", "cycle", "--size", "5", "--steps", "6", "--p", "0.5", "--samples", "9000"],
    ],
)
def test_jobs_invariance(argv):
    bodies = [_body(argv + ["--jobs", str(k)]) for k in (1, 2, 3)]
    assert bodies[0] == bodies[1] == bodies[2]


def test_timestamp_is_only_difference():
    cfg = parse_config(["simulate", "--steps", "3"])
    table = cli_main.COMMANDS["simulate"](cfg)
    a = render_csv(table, cfg.echo(), timestamp="A")
    b = render_csv(table, cfg.echo(), timestamp="B")
    assert a != b and body_lines(a) == body_lines(b)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(v):
    assert float(format_value(v)) == v


def test_csv_round_trip_exact():
    cfg = parse_config(["simulate", "--steps", "12", "--noise", "both", "--p", "0.07"])
    table, text = run(cfg)
    _, rows = data_rows(text)
    parsed = np.array([[float(v) for v in r] for r in rows])
    assert np.array_equal(parsed, np.array(table.rows, dtype=float))


def test_result_table_invariants():
    with pytest.raises(ValueError):
        ResultTable(["a", "a"], [])
    with pytest.raises(ValueError):
        ResultTable(["a", "b"], [[1]])


# --- every command --------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv, header",
    [
        (["simulate", "--steps", "4", "--p", "0.1"], ["t", "sigma", "tvd", "negativity"]),
        (["simulate", "--lattice", "cycle", "--size", "5", "--steps", "4"], ["t", "sigma", "tvd", "negativity"]),
        (["sweep", "--steps", "4", "--p-count", "3"], ["p", "tvd_final", "negativity_final", "sigma_final"]),
        (["mixing", "--lattice", "cycle", "--size", "7", "--p", "0.4"], ["t", "tvd", "tvd_averaged", "negativity"]),
        (["decay", "--steps", "5", "--p-values", "0,0.1"], ["t", "negativity_p=0.0", "negativity_p=0.1"]),
        (["resources", "--steps", "100"], None),
        (["oracle-check", "--steps", "3", "--p", "0.2", "--samples", "100"], ["x", "p_exact", "p_sampled", "abs_diff"]),
    ],
)
def test_every_command(argv, header, capsys):
    assert main(argv) == 0
    got, rows = data_rows(capsys.readouterr().out)
    if header is not None:
        assert got == header
    assert rows


def test_simulate_cycle_sigma_is_nan(capsys):
    main(["simulate", "--lattice", "cycle", "--size", "5", "--steps", "2"])
    _, rows = data_rows(capsys.readouterr().out)
    assert all(r[1] == "nan" for r in rows)


def test_resources_pinned(capsys):
    main(["resources", "--steps", "100"])
    text = capsys.readouterr().out
    header, rows = data_rows(text)
    row = dict(zip(header, rows[0]))
    assert row["quantum_gates"] == "900" and row["qubits"] == "9" and row["ancillae"] == "0"
    assert row["classical_equivalent_steps"] == "5000"
    assert "# gates class: O(T log T + pT log T)" in text


def test_mixing_summary(capsys):
    main(["mixing", "--lattice", "cycle", "--size", "7", "--p", "0.4", "--restarts", "2"])
    s = summary(capsys.readouterr().out)
    assert s["horizon"] == "70"
    assert float(s["epsilon"]) == pytest.approx(1 / 7)
    assert s["M"].isdigit()
    assert "warm_start restarts" in s


def test_plot_writes_svg(tmp_path):
    out = tmp_path / "run.csv"
    assert main(["simulate", "--steps", "5", "--out", str(out), "--plot"]) == 0
    svg = (tmp_path / "run.svg").read_bytes()
    assert svg.lstrip().startswith(b"<?xml") and b"<svg" in svg
    assert b"polyline" in svg or b"<path" in svg
    # rendering is byte-stable
    out2 = tmp_path / "again.csv"
    main(["simulate", "--steps", "5", "--out", str(out2), "--plot"])
    assert (tmp_path / "again.svg").read_bytes() == svg


# --- exit codes under fault injection -------------------------------------------------


NUMERICAL = [errors.NotHermitian, errors.ConvergenceFailure, errors.NumericalCorruption, errors.BoundaryOverflow]
CONFIG = [
    errors.InvalidConfig,
    errors.DimensionMismatch,
    errors.LatticeMismatch,
    errors.CycleUnsupported,
    errors.EmptySeries,
    errors.InvalidEpsilon,
    errors.InvalidMode,
    errors.DegenerateInput,
]


@pytest.mark.parametrize("exc, code", [(e, 3) for e in NUMERICAL] + [(e, 2) for e in CONFIG])
def test_exit_code_per_error_class(monkeypatch, tmp_path, exc, code):
    def boom(cfg):
        raise exc("injected")

    monkeypatch.setitem(cli_main.COMMANDS, "simulate", boom)
    out = tmp_path / "x.csv"
    assert main(["simulate", "--out", str(out)]) == code
    assert list(tmp_path.iterdir()) == []


def test_corruption_mid_run_leaves_nothing(monkeypatch, tmp_path):
    real = nuwalk.walk.step
    calls = []

    def flaky(rho, noise):
        calls.append(1)
        if len(calls) == 3:
            raise errors.NumericalCorruption("trace drift injected")
        return real(rho, noise)

    monkeypatch.setattr(nuwalk.walk, "step", flaky)
    out = tmp_path / "x.csv"
    assert main(["simulate", "--steps", "10", "--out", str(out)]) == 3
    assert list(tmp_path.iterdir()) == []


def test_failed_svg_write_removes_csv(monkeypatch, tmp_path):
    real = cli_main.atomic_write

    def fail_svg(path, data):
        if str(path).endswith(".svg"):
            raise errors.NumericalCorruption("disk says no")
        real(path, data)

    monkeypatch.setattr(cli_main, "atomic_write", fail_svg)
    out = tmp_path / "x.csv"
    assert main(["simulate", "--steps", "3", "--out", str(out), "--plot"]) == 3
    assert list(tmp_path.iterdir()) == []


def test_existing_output_untouched_on_failure(monkeypatch, tmp_path):
    out = tmp_path / "x.csv"
    out.write_text("previous\n")

    def boom(cfg):
        raise errors.NotHermitian("injected")

    monkeypatch.setitem(cli_main.COMMANDS, "simulate", boom)
    assert main(["simulate", "--out", str(out)]) == 3
    assert out.read_text() == "previous\n"
