"""Figure rendering for sweep reports.

Renders the two gap curves of a sweep to an image file next to the
delimited output.  File output only; the Agg backend is forced so the
renderer works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweeps import SweepRecord

_X_LABELS = {
    "n": "number of levels $N$",
    "lambda": r"coupling ratio $\lambda = v/\delta$",
    "b": "level offset $b$",
}


def render_sweep_figure(records: list[SweepRecord], swept: str, path: str,
                        units: str = "ev", title: str | None = None) -> str:
    """Plot gap-versus-parameter for both methods and save to ``path``.

    ``units`` selects the eV columns or the spacing-unit gap fields of
    the records.  Points without a real root are simply absent from
    their curve.  Returns the path written.
    """
    if units not in ("ev", "delta"):
        raise ValueError("units must be 'ev' or 'delta'")
    if not records:
        raise ValueError("nothing to plot: no sweep records")

    def series(getter):
        xs, ys = [], []
        for r in records:
            y = getter(r)
            if y is not None:
                xs.append(r.param)
                ys.append(y)
        return xs, ys

    if units == "ev":
        x1, y1 = series(lambda r: r.gap_sub1_ev)
        x2, y2 = series(lambda r: r.gap_eqn_ev)
    else:
        x1, y1 = series(lambda r: r.gap_sub1_spacing)
        x2, y2 = series(lambda r: r.gap_eqn_spacing)

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(x2, y2, "-", color="#1f77b4", lw=1.6, label="gap equation")
    ax.plot(x1, y1, "--", color="#d62728", lw=1.6, label="spectrum method")
    ax.set_xlabel(_X_LABELS[swept])
    ax.set_ylabel(r"gap $\Delta$ (eV)" if units == "ev"
                  else r"gap $\Delta$ ($\delta$ units)")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    ax.grid(True, alpha=0.3)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
