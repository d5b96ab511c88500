"""
SVG charts of sweeps and zero-mode maps.

Rendering uses the Agg backend with a fixed SVG hash salt and no date
metadata, so the same data always produces the same file.
"""

import io

import matplotlib

matplotlib.use("Agg")

import numpy as np  # noqa: E402
from matplotlib import colors  # noqa: E402
from matplotlib import pyplot as plt  # noqa: E402

from ptchain.core.constants import (  # noqa: E402
    EDGE_MARKER_COLOR,
    PHASEMAP_COLORS,
    SWEEP_MARKER_COLOR,
)
from ptchain.core.logging import get_logger  # noqa: E402
from ptchain.physics.sweeps import PhaseMap, SweepResult  # noqa: E402

logger = get_logger(__name__)

_AXIS_LABELS = {"theta": r"$\Theta$", "mu": r"$\mu / t$", "gamma": r"$\gamma / t$"}


def _svg_text(fig) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "ptchain", "svg.fonttype": "path"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()


def sweep_figure_svg(result: SweepResult) -> str:
    """Real and imaginary parts of every eigenvalue against the sweep axis."""
    axis = result.spec.axis.value
    logger.debug(f"Rendering sweep chart with {len(result.rows)} points")
    fig, (ax_re, ax_im) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)

    for row in result.rows:
        x = np.full(row.eigenvalues.shape[0], row.axis_value)
        ax_re.scatter(x, row.eigenvalues.real, s=2, color=SWEEP_MARKER_COLOR, linewidths=0)
        ax_im.scatter(x, row.eigenvalues.imag, s=2, color=SWEEP_MARKER_COLOR, linewidths=0)
        if row.edge_flags is not None:
            edges = np.array(row.edge_flags, dtype=bool)
            if edges.any():
                ax_re.scatter(
                    x[edges], row.eigenvalues.real[edges], s=12, marker="x",
                    color=EDGE_MARKER_COLOR, linewidths=0.8,
                )
                ax_im.scatter(
                    x[edges], row.eigenvalues.imag[edges], s=12, marker="x",
                    color=EDGE_MARKER_COLOR, linewidths=0.8,
                )

    ax_re.set_ylabel(r"Re $E / t$")
    ax_im.set_ylabel(r"Im $E / t$")
    ax_im.set_xlabel(_AXIS_LABELS.get(axis, axis))
    fig.tight_layout()
    return _svg_text(fig)


def phase_map_figure_svg(phase_map: PhaseMap) -> str:
    """Two-colour cell map: bright for two zero modes, dark for none."""
    logger.debug(f"Rendering zero-mode map {phase_map.counts.shape}")
    fig, ax = plt.subplots(figsize=(6, 5))
    cmap = colors.ListedColormap(list(PHASEMAP_COLORS))
    norm = colors.BoundaryNorm([-0.5, 1.5, 2.5], cmap.N, clip=True)

    ax.pcolormesh(
        phase_map.mu_axis,
        phase_map.gamma_axis,
        np.clip(phase_map.counts, 0, 2).T,
        cmap=cmap,
        norm=norm,
        shading="nearest",
    )
    ax.set_xlabel(_AXIS_LABELS["mu"])
    ax.set_ylabel(_AXIS_LABELS["gamma"])
    ax.set_title(f"zero modes ({phase_map.potential.value})")
    fig.tight_layout()
    return _svg_text(fig)

