"""Report figures: gate-distribution and benchmark charts rendered to files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_distribution_figure(labels: list[str], counts: list[int], path: str | Path,
                             title: str = "gate distribution") -> Path:
    """Bar chart of gate-class counts (T1..Tk, Fk, H order as given)."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(labels) + 1.5), 3.2))
    ax.bar(range(len(labels)), counts, color="#4878a8")
    ax.set_xticks(range(len(labels)), labels, rotation=45 if len(labels) > 12 else 0)
    ax.set_ylabel("count")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_bench_figures(rows: list[dict], out_dir: str | Path, stem: str = "bench") -> list[Path]:
    """Cost before/after and improvement charts for a benchmark run.

    Rows are the bench report dicts; FAILED rows are skipped. Returns the
    paths written (empty when there is nothing to plot).
    """
    rows = [r for r in rows if r.get("verdict") != "FAILED"]
    if not rows:
        return []
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = [r["name"] for r in rows]
    xs = range(len(names))
    written = []

    fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * len(names) + 2.0), 3.6))
    width = 0.4
    ax.bar([i - width / 2 for i in xs], [r["cost_before"] for r in rows],
           width=width, label="before", color="#a05050")
    ax.bar([i + width / 2 for i in xs], [r["cost_after"] for r in rows],
           width=width, label="after", color="#4878a8")
    ax.set_xticks(list(xs), names, rotation=30, ha="right")
    ax.set_ylabel("two-qubit gate cost")
    ax.set_title("circuit cost before/after rewriting")
    ax.legend()
    fig.tight_layout()
    cost_path = out_dir / f"{stem}_cost.png"
    fig.savefig(cost_path, dpi=120)
    plt.close(fig)
    written.append(cost_path)

    fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * len(names) + 2.0), 3.2))
    ax.bar(list(xs), [r["improvement_pct"] for r in rows], color="#50876a")
    ax.set_xticks(list(xs), names, rotation=30, ha="right")
    ax.set_ylabel("% improvement")
    ax.set_title("cost reduction per circuit")
    fig.tight_layout()
    imp_path = out_dir / f"{stem}_improvement.png"
    fig.savefig(imp_path, dpi=120)
    plt.close(fig)
    written.append(imp_path)
    return written
