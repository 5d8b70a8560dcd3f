"""Figure rendering for the rate reports.

Kept separate from the analysis code so the library itself stays
matplotlib-free; the CLI calls in here when writing report figures next
to the CSV output.
"""

from __future__ import annotations

from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .rates import entropy_bound, qary_rate, ternary_rate, z2z4_rate, z2z4_rate_saturating

__all__ = ["render_rate_curves"]


def _curve(points):
    pts = sorted(points, key=lambda p: p.D)
    return [p.D for p in pts], [p.E for p in pts]


def render_rate_curves(path: str, B: int = 8,
                       m_range: Iterable[int] = range(2, 13),
                       mu_range: Iterable[int] = range(1, 9),
                       q_values: Iterable[int] = (5, 7, 9),
                       q_mu_range: Iterable[int] = range(1, 7),
                       dpi: int = 150) -> str:
    """Render rate/distortion comparison curves to an image file.

    Left panel: ideal covers; right panel: uniform covers at depth B
    with the saturation penalties.  Returns the path written.
    """
    m_range = list(m_range)
    mu_range = list(mu_range)
    q_values = list(q_values)
    q_mu_range = list(q_mu_range)

    fig, axes = plt.subplots(1, 2, figsize=(11, 4.5), sharey=True)
    grid = np.linspace(1e-9, 2 / 3, 400)

    for ax, saturating in zip(axes, (False, True)):
        if saturating:
            z = [z2z4_rate_saturating(m, B) for m in m_range]
            t = [ternary_rate(mu, saturating=True, B=B) for mu in mu_range]
        else:
            z = [z2z4_rate(m) for m in m_range]
            t = [ternary_rate(mu) for mu in mu_range]
        ax.plot(*_curve(z), "o-", label="Z2Z4 codec", markersize=4)
        ax.plot(*_curve(t), "s--", label="ternary Hamming", markersize=4)
        for q in q_values:
            pts = [qary_rate(q, mu, saturating=saturating, B=B) for mu in q_mu_range]
            ax.plot(*_curve(pts), ":", label=f"{q}-ary Hamming", linewidth=1)
        ax.plot(grid, [entropy_bound(d) for d in grid], "k-",
                label="H(D)+D bound", linewidth=0.8)
        ax.set_xscale("log")
        ax.set_xlabel("average distortion D")
        ax.set_title("saturating covers (B=%d)" % B if saturating else "ideal covers")
        ax.grid(True, which="both", alpha=0.3)
    axes[0].set_ylabel("embedding rate E (bits/symbol)")
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
