"""Run configuration: flags, ``key=value`` config files and validation.

Precedence is built-in defaults < config file < command-line flags. Config
file keys are the long flag names without the leading dashes (``-`` and
``_`` are interchangeable); ``#`` starts a comment.
"""

import argparse
from dataclasses import dataclass, fields
from typing import Optional

COMMANDS = ("simulate", "sweep", "mixing", "decay", "resources", "oracle-check")
TARGETS = ("coin", "position", "both")


@dataclass
class RunConfig:
    command: str = "simulate"
    lattice: str = "line"
    steps: int = 100
    size: int = 29
    horizon: Optional[int] = None
    noise: Optional[str] = None
    p: float = 0.0
    p_min: float = 0.0
    p_max: float = 0.2
    p_count: int = 41
    p_values: str = "0,0.05,0.1"
    epsilon: Optional[float] = None
    restarts: int = 0
    samples: int = 100000
    seed: int = 0
    jobs: int = 1
    out: Optional[str] = None
    plot: bool = False

    @property
    def target(self):
        if self.noise is not None:
            return self.noise
        return "both" if self.command == "decay" else "position"

    def p_grid(self):
        if self.p_count == 1:
            return [self.p_min]
        step = (self.p_max - self.p_min) / (self.p_count - 1)
        return [round(self.p_min + i * step, 12) for i in range(self.p_count)]

    def decay_rates(self):
        return [float(v) for v in self.p_values.split(",") if v.strip()]

    def echo(self):
        """Stable ``key=value`` rendering for provenance headers.

        `out` and `jobs` are left out: neither changes the results.
        """
        skip = ("out", "jobs")
        return " ".join(f"{f.name}={getattr(self, f.name)}" for f in fields(self) if f.name not in skip)


_FIELD_TYPES = {
    "steps": int,
    "size": int,
    "horizon": int,
    "p": float,
    "p_min": float,
    "p_max": float,
    "p_count": int,
    "epsilon": float,
    "restarts": int,
    "samples": int,
    "seed": int,
    "jobs": int,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="nuwalk",
        description="Coined quantum walks on the line and cycle with projective noise.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", metavar="PATH", help="key=value configuration file")
    sup = argparse.SUPPRESS
    ap.add_argument("--lattice", choices=("line", "cycle"), default=sup)
    ap.add_argument("--steps", type=int, default=sup, help="walk length T")
    ap.add_argument("--size", type=int, default=sup, help="cycle size N")
    ap.add_argument("--horizon", type=int, default=sup, help="cycle run length (default 10 N)")
    ap.add_argument("--noise", choices=TARGETS, default=sup)
    ap.add_argument("--p", type=float, default=sup, help="noise rate per step")
    ap.add_argument("--p-min", dest="p_min", type=float, default=sup)
    ap.add_argument("--p-max", dest="p_max", type=float, default=sup)
    ap.add_argument("--p-count", dest="p_count", type=int, default=sup)
    ap.add_argument("--p-values", dest="p_values", default=sup, help="comma-separated rates (decay)")
    ap.add_argument("--epsilon", type=float, default=sup, help="mixing threshold, unhalved TVD")
    ap.add_argument("--restarts", type=int, default=sup, help="warm-start restarts (mixing)")
    ap.add_argument("--samples", type=int, default=sup)
    ap.add_argument("--seed", type=int, default=sup)
    ap.add_argument("--jobs", type=int, default=sup)
    ap.add_argument("--out", default=sup, help="CSV path (default stdout)")
    ap.add_argument("--plot", action="store_true", default=sup, help="also write an SVG plot")
    return ap


def read_config_file(path, parser):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        parser.error(f"--config: cannot read {path}: {exc.strerror}")
    known = {f.name for f in fields(RunConfig)} - {"command"}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            parser.error(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            parser.error(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, value, parser, f"{path}:{lineno}: {key}")
    return values


def _coerce(key, value, parser, where):
    if key == "plot":
        low = value.lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            parser.error(f"{where}: expected a boolean, got {value!r}")
        return low in ("true", "1", "yes")
    kind = _FIELD_TYPES.get(key)
    if kind is None:
        return value
    try:
        return kind(value)
    except ValueError:
        parser.error(f"{where}: expected {kind.__name__}, got {value!r}")


def validate(cfg, parser):
    def bad(flag, msg):
        parser.error(f"--{flag.replace('_', '-')}: {msg}")

    if cfg.lattice not in ("line", "cycle"):
        bad("lattice", f"must be line or cycle, got {cfg.lattice!r}")
    if cfg.noise is not None and cfg.noise not in TARGETS:
        bad("noise", f"must be one of {', '.join(TARGETS)}, got {cfg.noise!r}")
    for name in ("p", "p_min", "p_max"):
        v = getattr(cfg, name)
        if not 0.0 <= v <= 1.0:
            bad(name, f"{v} is outside the range [0, 1]")
    if cfg.p_min > cfg.p_max:
        bad("p_min", "must not exceed --p-max")
    if cfg.p_count < 1:
        bad("p_count", "must be >= 1")
    try:
        rates = cfg.decay_rates()
    except ValueError:
        bad("p_values", f"not a comma-separated list of numbers: {cfg.p_values!r}")
    if not rates or any(not 0.0 <= r <= 1.0 for r in rates):
        bad("p_values", "rates must be non-empty and lie in the range [0, 1]")
    if cfg.steps < 0 or (cfg.command in ("sweep", "decay", "resources") and cfg.steps < 1):
        bad("steps", f"must be positive, got {cfg.steps}")
    if cfg.size < 3:
        bad("size", f"cycle size must be >= 3, got {cfg.size}")
    if cfg.horizon is not None and cfg.horizon < 1:
        bad("horizon", f"must be positive, got {cfg.horizon}")
    if cfg.epsilon is not None and not 0.0 < cfg.epsilon < 2.0:
        bad("epsilon", f"{cfg.epsilon} is outside the range (0, 2)")
    if cfg.restarts < 0:
        bad("restarts", "must be >= 0")
    if cfg.samples < 1:
        bad("samples", "must be >= 1")
    if cfg.seed < 0 or cfg.seed >= 2**64:
        bad("seed", "must be an unsigned 64-bit integer")
    if cfg.jobs < 1:
        bad("jobs", "must be >= 1")
    if cfg.command in ("sweep", "decay") and cfg.lattice != "line":
        bad("lattice", f"{cfg.command} runs on the line only")
    if cfg.command == "mixing":
        if cfg.lattice != "cycle":
            bad("lattice", "mixing runs on a cycle; pass --lattice cycle")
        if cfg.restarts and cfg.size % 2 == 0:
            bad("restarts", "warm start needs an odd --size")
        if cfg.horizon is not None and cfg.horizon < cfg.size:
            bad("horizon", "must be at least --size")
    if cfg.plot and cfg.out is None:
        bad("plot", "needs --out so the SVG has a place to go")
    if cfg.plot and cfg.command == "resources":
        bad("plot", "resources produces a single row; nothing to plot")


def parse_config(argv=None):
    """Parse `argv` into a validated :class:`RunConfig`.

    Invalid input exits with status 2 and a message naming the key or flag.
    """
    parser = build_parser()
    ns = vars(parser.parse_args(argv))
    cfg = RunConfig(command=ns.pop("command"))
    path = ns.pop("config", None)
    if path is not None:
        for key, value in read_config_file(path, parser).items():
            setattr(cfg, key, value)
    for key, value in ns.items():
        setattr(cfg, key, value)
    validate(cfg, parser)
    return cfg
