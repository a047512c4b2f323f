"""CSV emission with ``#`` provenance comments and atomic file writes."""

import datetime as _dt
import math
import os
import tempfile
from dataclasses import dataclass, field

from .. import __version__

TVD_NOTE = "tvd is unhalved: sum_x |P(x) - Q(x)|, range [0, 2]"


@dataclass
class ResultTable:
    columns: list
    rows: list
    provenance: list = field(default_factory=list)
    summary: list = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ValueError(f"duplicate column names in {self.columns}")
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"row {r!r} does not match {len(self.columns)} columns")

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def format_value(v):
    """Round-trippable text: integers verbatim, floats with 17 significant digits."""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def render_csv(table, config_echo, timestamp=None):
    ts = timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    lines = [
        f"# nuwalk {__version__}",
        f"# generated {ts}",
        f"# config {config_echo}",
        f"# {TVD_NOTE}",
    ]
    lines += [f"# {p}" for p in table.provenance]
    lines.append(",".join(table.columns))
    lines += [",".join(format_value(v) for v in row) for row in table.rows]
    lines += [f"# summary {s}" for s in table.summary]
    return "\n".join(lines) + "\n"


def body_lines(text):
    """CSV text without the timestamp line, for determinism comparisons."""
    return [ln for ln in text.splitlines() if not ln.startswith("# generated ")]


def atomic_write(path, data):
    """Write `data` to a temporary sibling of `path`, then rename it into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".nuwalk-", suffix=".tmp")
    try:
        mode = "wb" if isinstance(data, bytes) else "w"
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
