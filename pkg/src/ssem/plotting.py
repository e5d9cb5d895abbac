"""Figures for the CLI report paths, rendered to files with the Agg backend."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402


def _save(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_iteration_sizes(per_pred: Mapping[str, Sequence[int]], path: str, title: str = "") -> str:
    """Variant classes per predicate after each application of the operator."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for name in sorted(per_pred):
        counts = list(per_pred[name])
        ax.plot(range(1, len(counts) + 1), counts, marker="o", label=name)
    ax.set_xlabel("iteration")
    ax.set_ylabel("variant classes")
    ax.set_yscale("symlog")
    if per_pred:
        ax.legend()
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_levels(targets: Iterable[Mapping[str, object]], path: str, title: str = "") -> str:
    """Stacked histogram of target levels, split by witness status."""
    ok: Counter = Counter()
    bad: Counter = Counter()
    for t in targets:
        if "level" not in t:
            continue
        (ok if t.get("status") == "ok" else bad)[int(t["level"])] += 1
    levels = sorted(set(ok) | set(bad))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(levels, [ok[l] for l in levels], label="witnessed")
    ax.bar(levels, [bad[l] for l in levels], bottom=[ok[l] for l in levels], label="no witness")
    ax.set_xlabel("level")
    ax.set_ylabel("atoms")
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.legend()
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_boards(solutions: Sequence[Tuple[int, ...]], path: str, max_boards: int = 12) -> str:
    """Draw up to ``max_boards`` placements; ``sol[c]`` is the row of column ``c + 1``."""
    shown = list(solutions)[:max_boards]
    cols = max(1, min(4, len(shown)))
    rows = max(1, -(-len(shown) // cols))
    fig, axes = plt.subplots(rows, cols, figsize=(2.2 * cols, 2.2 * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, sol in zip(axes.flat, shown):
        n = len(sol)
        board = [[(r + c) % 2 for c in range(n)] for r in range(n)]
        ax.imshow(board, cmap="Greys", vmin=0, vmax=3, origin="lower")
        ax.scatter([c for c in range(n)], [r - 1 for r in sol], s=1200 / max(n, 1), c="crimson")
        ax.set_title(",".join(map(str, sol)), fontsize=8)
    if not shown:
        axes.flat[0].text(0.5, 0.5, "no solutions", ha="center", va="center")
    return _save(fig, path)
