"""Figure rendering for the CLI report paths.

Every CSV the CLI writes gets a companion PNG from here.  Figures use the
Agg backend so the CLI works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _finish(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_two_stage(path, rows: list[dict]) -> Path:
    """Grouped bars: classical vs quantum two-step outcome probabilities per case."""
    labels = [r["case"] for r in rows]
    x = np.arange(len(rows))
    width = 0.2
    fig, ax = plt.subplots(figsize=(max(4.0, 1.4 * len(rows)), 3.2))
    ax.bar(x - 1.5 * width, [r["classical_p0"] for r in rows], width, label="classical P(0)")
    ax.bar(x - 0.5 * width, [r["classical_p1"] for r in rows], width, label="classical P(1)")
    ax.bar(x + 0.5 * width, [r["quantum_p0"] for r in rows], width, label="quantum P(0)")
    ax.bar(x + 1.5 * width, [r["quantum_p1"] for r in rows], width, label="quantum P(1)")
    ax.set_xticks(x, labels, rotation=20, ha="right")
    ax.set_ylabel("probability after two steps")
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8)
    return _finish(fig, Path(path))


def render_grover_trace(path, trace: np.ndarray, closed_form: np.ndarray | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(4.8, 3.2))
    t = np.arange(len(trace))
    ax.plot(t, trace, "o-", label="simulated")
    if closed_form is not None:
        ax.plot(t, closed_form, "--", label="closed form")
    ax.set_xlabel("iteration")
    ax.set_ylabel("success probability")
    ax.set_ylim(0, 1.05)
    ax.legend()
    return _finish(fig, Path(path))


def render_walk_heatmap(path, mu_by_step: np.ndarray) -> Path:
    """Space-time occupation heatmap: rows are steps, columns lattice sites."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    im = ax.imshow(mu_by_step, aspect="auto", origin="lower", cmap="magma")
    ax.set_xlabel("site")
    ax.set_ylabel("step")
    fig.colorbar(im, ax=ax, label="occupation probability")
    return _finish(fig, Path(path))


def render_match_outcomes(path, summaries: list[dict]) -> Path:
    """Outcome counts plus a histogram of capture rounds."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7.2, 3.2))
    statuses = [s["status"] for s in summaries]
    labels = sorted(set(statuses))
    counts = [statuses.count(lbl) for lbl in labels]
    ax1.bar(labels, counts, color=["tab:red" if "Caught" in l else "tab:green" for l in labels])
    ax1.set_ylabel("matches")
    caught_rounds = [s["rounds"] for s in summaries if s["status"] == "angelCaught"]
    if caught_rounds:
        ax2.hist(caught_rounds, bins=min(20, max(3, len(set(caught_rounds)))), color="tab:red")
    ax2.set_xlabel("round of capture")
    ax2.set_ylabel("matches")
    return _finish(fig, Path(path))


def render_payoff_landscape(path, values: np.ndarray, player: int) -> Path:
    """Heatmap of one player's payoff over a two-set strategy grid."""
    fig, ax = plt.subplots(figsize=(4.6, 3.8))
    im = ax.imshow(values, aspect="auto", origin="lower", cmap="viridis")
    ax.set_xlabel("second information set grid index")
    ax.set_ylabel("first information set grid index")
    fig.colorbar(im, ax=ax, label=f"player {player} payoff")
    return _finish(fig, Path(path))
