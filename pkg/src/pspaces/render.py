"""Matplotlib renderings for reports: Hasse diagrams and verdict grids."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .poset import Poset, format_label

VERDICT_COLORS = {
    "pass": "#2e7d32",
    "fail": "#c62828",
    "inconclusive": "#ef6c00",
    "hypothesis-not-met": "#9e9e9e",
    "info": "#1565c0",
    "error": "#6a1b9a",
}


def hasse_figure(poset: Poset, path: str | Path, names: Sequence[str] | None = None,
                 title: str = "") -> Path:
    """Draw the rank-layered Hasse diagram and save it to `path`."""
    names = list(names) if names is not None else [format_label(x) for x in poset.labels]
    heights = poset.heights()
    levels: dict[int, list[int]] = {}
    for i, h in enumerate(heights):
        levels.setdefault(h, []).append(i)
    pos = {}
    for h, members in levels.items():
        members.sort(key=lambda i: names[i])
        width = len(members)
        for k, i in enumerate(members):
            pos[i] = (k - (width - 1) / 2.0, h)

    n_levels = max(levels) + 1 if levels else 1
    widest = max((len(m) for m in levels.values()), default=1)
    fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * widest), max(3.0, 1.4 * n_levels)))
    for i, j in poset.covers():
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.plot([x0, x1], [y0, y1], color="#90a4ae", lw=0.9, zorder=1)
    xs = [pos[i][0] for i in range(poset.n)]
    ys = [pos[i][1] for i in range(poset.n)]
    ax.scatter(xs, ys, s=160, color="#eceff1", edgecolor="#37474f", zorder=2)
    for i in range(poset.n):
        ax.annotate(names[i], pos[i], ha="center", va="center", fontsize=7, zorder=3)
    ax.set_title(title or f"{poset.n}-element poset")
    ax.set_axis_off()
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def verdict_grid(rows: Sequence[tuple[str, Mapping[str, str]]], columns: Sequence[str],
                 path: str | Path, title: str = "verification summary") -> Path:
    """Color grid of verdicts: one row per entry, one column per check."""
    fig_h = max(2.0, 0.38 * len(rows) + 1.2)
    fig_w = max(4.0, 1.15 * len(columns) + 2.4)
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    for r, (label, verdicts) in enumerate(rows):
        for c, col in enumerate(columns):
            verdict = verdicts.get(col, "")
            color = VERDICT_COLORS.get(verdict, "#ffffff")
            ax.add_patch(plt.Rectangle((c, len(rows) - 1 - r), 1, 1,
                                       facecolor=color, edgecolor="white"))
    ax.set_xticks([c + 0.5 for c in range(len(columns))])
    ax.set_xticklabels(columns, rotation=45, ha="right", fontsize=8)
    ax.set_yticks([len(rows) - 1 - r + 0.5 for r in range(len(rows))])
    ax.set_yticklabels([label for label, _ in rows], fontsize=8)
    ax.set_xlim(0, max(len(columns), 1))
    ax.set_ylim(0, max(len(rows), 1))
    ax.set_title(title)
    handles = [plt.Rectangle((0, 0), 1, 1, facecolor=c) for c in VERDICT_COLORS.values()]
    ax.legend(handles, VERDICT_COLORS.keys(), loc="upper left",
              bbox_to_anchor=(1.01, 1.0), fontsize=7)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
