"""Figure rendering for the CLI report paths.

Uses the Agg backend so reports render in headless environments; figures are
written next to the delimited output they illustrate.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["save_spectrum_figure", "save_residual_figure"]


def save_spectrum_figure(rows, path) -> None:
    """Transmittance versus sample index, rendered to an image file."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(
        [row.index for row in rows],
        [row.transmittance for row in rows],
        color="tab:blue",
        lw=1.2,
    )
    ax.set_xlabel("sample index")
    ax.set_ylabel("transmittance")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_residual_figure(entries, path) -> None:
    """Identity residual norms versus power index on a log scale.

    ``entries`` are (label, p, value) triples; values are floored at 1e-18 so
    exact zeros still render on the log axis.
    """
    by_label: dict[str, tuple[list[int], list[float]]] = {}
    for label, p, value in entries:
        xs, ys = by_label.setdefault(label, ([], []))
        xs.append(p)
        ys.append(max(value, 1e-18))
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    for label, (xs, ys) in by_label.items():
        ax.semilogy(xs, ys, marker="o", ms=3.0, lw=1.0, label=label)
    ax.set_xlabel("p")
    ax.set_ylabel("residual norm")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
