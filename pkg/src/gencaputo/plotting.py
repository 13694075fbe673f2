"""Matplotlib figures written next to the CSV reports.

Figures are drawn on standalone :class:`matplotlib.figure.Figure` objects
(no pyplot state) and saved as SVG with a fixed hash salt and no date
stamp, so identical data gives identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib
import numpy as np
from matplotlib.figure import Figure

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 4.5
params = {
    "svg.hashsalt": "gencaputo",
    "svg.fonttype": "none",
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
    "figure.figsize": (fig_width, fig_width * golden_mean),
}


def _new_figure():
    fig = Figure()
    ax = fig.add_subplot(1, 1, 1)
    return fig, ax


def _save(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def convergence_figure(Ns: Sequence[int], errors: Sequence[float], path, ref_slopes: Sequence[float] = (),
                       title: str = "") -> Path:
    """Log-log error against N, with dashed guides of the given slopes."""
    with matplotlib.rc_context(params):
        fig, ax = _new_figure()
        Ns = np.asarray(Ns, dtype=float)
        errors = np.asarray(errors, dtype=float)
        ax.loglog(Ns, errors, "o-", color="tab:blue", label="error")
        for slope in ref_slopes:
            # anchor the guide at the first point
            ax.loglog(Ns, errors[0] * (Ns / Ns[0]) ** (-slope), "--", color="0.5", lw=0.8,
                      label=f"slope {slope:g}")
        ax.set_xlabel("N")
        ax.set_ylabel(r"$\|e\|_{\ell^\infty}$")
        if title:
            ax.set_title(title)
        ax.legend()
        return _save(fig, path)


def overlay_figure(t, curves: dict, path, markers: Sequence[str] = (), xlabel: str = "t",
                   title: str = "") -> Path:
    """Plot several solution curves on shared nodes; names in ``markers`` get circles."""
    with matplotlib.rc_context(params):
        fig, ax = _new_figure()
        for name, values in curves.items():
            if name in markers:
                ax.plot(t, values, "o", mfc="none", color="tab:blue", label=name)
            else:
                ax.plot(t, values, "-", color="tab:red", label=name)
        ax.set_xlabel(xlabel)
        ax.set_ylabel("u")
        if title:
            ax.set_title(title)
        ax.legend()
        return _save(fig, path)


def error_vs_rho_figure(rhos, errors, path, title: str = "") -> Path:
    with matplotlib.rc_context(params):
        fig, ax = _new_figure()
        ax.loglog(rhos, errors, "o-", color="tab:blue")
        ax.set_xlabel(r"$\rho$")
        ax.set_ylabel(r"$L^\infty$ error")
        if title:
            ax.set_title(title)
        return _save(fig, path)
