# ==========================================
# Period-Map Figure (SVG)
# ==========================================
#
# Left: eta -> f(0, eta). Right: T_f(a) with the realizable-period lines;
# triangles mark negative-feedback crossings, squares positive-feedback ones,
# each annotated with the circled Morse index when known.

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from calculators.periodmap import realizable  # noqa: E402

logger = logging.getLogger(__name__)

CIRCLED = "⓪①②③④⑤⑥⑦⑧⑨⑩"


def _circled(k: int) -> str:
    return CIRCLED[k] if 0 <= k < len(CIRCLED) else f"({k})"


def plot_period_map(table, n_max: int, records=None, crossings=None, path="periodmap.svg") -> Path:
    matplotlib.rcParams["svg.hashsalt"] = "kyorbit"
    nl = table.nl
    a = table.amplitudes

    fig, (ax_f, ax_t) = plt.subplots(1, 2, figsize=(10, 4))

    eta = np.linspace(-a[-1], a[-1], 401)
    ax_f.plot(eta, [nl(0.0, e) for e in eta], color="black", lw=1.2)
    ax_f.axhline(0.0, color="grey", lw=0.5)
    ax_f.axvline(0.0, color="grey", lw=0.5)
    ax_f.set_xlabel("η")
    ax_f.set_ylabel("f(0, η)")
    ax_f.set_title(nl.describe(), fontsize=9)

    ax_t.plot(a, table.periods, color="black", lw=1.2)
    for rp in realizable(nl.feedback, n_max):
        ax_t.axhline(rp.value, color="grey", lw=0.6, ls="--")

    points = []
    if records:
        points = [(r.amplitude, r.period, r.feedback, r.n, r.morse_index) for r in records]
    elif crossings:
        points = [(0.5 * (c.a_lo + c.a_hi), c.rp.value, c.rp.feedback, c.rp.n, None) for c in crossings]
    for amp, period, feedback, n, index in points:
        marker = "^" if feedback.value == "negative" else "s"
        ax_t.plot([amp], [period], marker=marker, color="black", markerfacecolor="white", ms=7)
        if index is not None:
            ax_t.annotate(_circled(index), (amp, period), textcoords="offset points", xytext=(6, 6))

    ax_t.set_xlabel("a")
    ax_t.set_ylabel("T_f(a)")
    ax_t.set_title(table.classification.value.replace("_", " "), fontsize=9)

    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.debug("Wrote %s", path)
    return path
