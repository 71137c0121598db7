"""Static report: embedding scatter figures, per-label mean persistence
images, and a delimited per-item summary."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .project import Project


def write_report(project: Project, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    labels = np.array([r.label for r in project.items])
    for method, emb in sorted(project.embeddings.items()):
        fig, ax = plt.subplots(figsize=(7, 6))
        sc = ax.scatter(
            emb.coords[:, 0], emb.coords[:, 1], c=labels, cmap="tab10", s=14,
            vmin=-0.5, vmax=9.5,
        )
        fig.colorbar(sc, ax=ax, ticks=range(10), label="label")
        ax.set_title(f"{method} embedding of persistence images")
        ax.set_xlabel("dim 1")
        ax.set_ylabel("dim 2")
        path = out / f"embedding_{method}.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    n = project.config.resolution
    by_label: dict[int, list[np.ndarray]] = {}
    for r in project.items:
        by_label.setdefault(r.label, []).append(project.pimages[r.id].pixels)
    label_keys = sorted(by_label)
    cols = min(5, len(label_keys))
    rows = -(-len(label_keys) // cols)
    fig, axes = plt.subplots(rows, cols, figsize=(2.2 * cols, 2.4 * rows), squeeze=False)
    vmax = max(
        (float(np.mean(v, axis=0).max()) for v in by_label.values()), default=1.0
    ) or 1.0
    for ax in axes.ravel():
        ax.axis("off")
    for ax, label in zip(axes.ravel(), label_keys):
        mean_img = np.mean(by_label[label], axis=0).reshape(n, n)
        # row 0 is the lowest persistence bin; draw it at the bottom
        ax.imshow(mean_img, origin="lower", cmap="RdBu_r", vmin=-vmax, vmax=vmax)
        ax.set_title(f"label {label}", fontsize=9)
        ax.axis("off")
    fig.suptitle("mean persistence image per label")
    path = out / "persistence_images_by_label.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    summary = out / "summary.csv"
    methods = sorted(project.embeddings)
    with open(summary, "w", newline="") as f:
        writer = csv.writer(f)
        header = ["id", "label", "n_cycles", "max_persistence"]
        for m in methods:
            header += [f"{m}_x", f"{m}_y"]
        writer.writerow(header)
        index_of = {r.id: i for i, r in enumerate(project.items)}
        for r in project.items:
            diagram = project.diagrams[r.id]
            row = [
                r.id,
                r.label,
                len(diagram.pairs_in_dim(1)),
                diagram.max_persistence(1),
            ]
            for m in methods:
                x, y = project.embeddings[m].coords[index_of[r.id]]
                row += [float(x), float(y)]
            writer.writerow(row)
    written.append(summary)
    return written
