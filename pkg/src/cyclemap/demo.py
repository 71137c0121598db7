"""Deterministic synthetic toy corpus: strokes (no holes) and double rings
(two holes). Small enough for golden API tests and quick demos."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .ingest import LabeledRaster, write_idx
from .project import ProjectConfig, ProjectStore, run_pipeline

SIZE = 16


def _ring(canvas: np.ndarray, cy: float, cx: float, radius: float, width: float):
    h, w = canvas.shape
    yy, xx = np.mgrid[0:h, 0:w]
    dist = np.sqrt((yy - cy) ** 2 + (xx - cx) ** 2)
    canvas[np.abs(dist - radius) <= width] = 255


def _stroke(canvas: np.ndarray, col: int):
    canvas[2:14, col : col + 2] = 255


def toy_rasters() -> list[LabeledRaster]:
    rasters = []
    for i in range(5):
        canvas = np.zeros((SIZE, SIZE), dtype=np.uint8)
        _stroke(canvas, 5 + i)
        rasters.append(
            LabeledRaster(
                id=f"idx-{len(rasters)}", label=1, width=SIZE, height=SIZE,
                pixels=canvas.ravel(),
            )
        )
    for i in range(5):
        canvas = np.zeros((SIZE, SIZE), dtype=np.uint8)
        _ring(canvas, 4.5, 7.5 - 0.3 * i, 2.6, 1.0)
        _ring(canvas, 11.0, 7.5 + 0.3 * i, 2.9, 1.0)
        rasters.append(
            LabeledRaster(
                id=f"idx-{len(rasters)}", label=8, width=SIZE, height=SIZE,
                pixels=canvas.ravel(),
            )
        )
    return rasters


def build_toy_project(out_dir, threads: int | None = None) -> ProjectStore:
    """Write the toy corpus as IDX files and run the full pipeline on it."""
    out = Path(out_dir)
    source = out / "source"
    source.mkdir(parents=True, exist_ok=True)
    images, labels = source / "toy-images-idx3-ubyte", source / "toy-labels-idx1-ubyte"
    write_idx(toy_rasters(), images, labels)
    cfg = ProjectConfig(
        input=str(images),
        format="idx",
        labels=str(labels),
        per_class=5,
        seed=7,
        k=3,
        perplexity=2.0,
        iterations=300,
        embed_seed=7,
        threads=threads,
    )
    return run_pipeline(cfg, out)
