"""Static SVG rendering of a result table with matplotlib's Agg backend."""

import io
import math


def render_svg(table, title=""):
    """Plot every column against the first one; return the SVG as bytes."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed salt and no date keep the SVG byte-stable across runs
    with matplotlib.rc_context({"svg.hashsalt": "nuwalk", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        x = [float(v) for v in table.column(table.columns[0])]
        for name in table.columns[1:]:
            y = [float(v) for v in table.column(name)]
            if all(math.isnan(v) for v in y):
                continue
            ax.plot(x, y, label=name, linewidth=1.2, marker="." if len(x) < 60 else None)
        ax.set_xlabel(table.columns[0])
        if title:
            ax.set_title(title)
        ax.grid(alpha=0.3)
        ax.legend(loc="best", fontsize="small")
        fig.tight_layout()
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()
