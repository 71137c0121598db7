"""Corpus loading: IDX binary files or image directories, per-class sampling,
and conversion of rasters into normalized filtration functions."""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    CountMismatch,
    InsufficientClassMembers,
    NonGrayscaleImage,
    TruncatedFile,
    UnparsableName,
)

IDX_IMAGE_MAGIC = 0x00000803
IDX_LABEL_MAGIC = 0x00000801

_NAME_RE = re.compile(r"^(\d+)_(\d+)\.(png|pgm)$", re.IGNORECASE)


@dataclass(frozen=True)
class LabeledRaster:
    """One corpus item: an 8-bit grayscale raster with a class label."""

    id: str
    label: int
    width: int
    height: int
    pixels: np.ndarray  # uint8, row-major, length width*height

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8).ravel()
        object.__setattr__(self, "pixels", px)
        if self.width < 2 or self.height < 2:
            raise ValueError(f"raster {self.id}: needs width and height >= 2")
        if px.size != self.width * self.height:
            raise ValueError(
                f"raster {self.id}: {px.size} pixels != {self.width}x{self.height}"
            )


@dataclass(frozen=True)
class ScalarGrid:
    """Filtration function f on a pixel grid, values in [0, 1], row-major."""

    width: int
    height: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).ravel()
        object.__setattr__(self, "values", v)
        if v.size != self.width * self.height:
            raise ValueError(f"{v.size} values != {self.width}x{self.height}")
        if not np.all(np.isfinite(v)) or v.min() < 0.0 or v.max() > 1.0:
            raise ValueError("scalar grid values must be finite and within [0, 1]")


def _read_be32(buf: bytes, path, offset: int) -> int:
    if len(buf) < offset + 4:
        raise TruncatedFile(str(path), len(buf), offset + 4 - len(buf))
    return struct.unpack_from(">I", buf, offset)[0]


def load_idx(images_path, labels_path) -> list[LabeledRaster]:
    """Load an IDX image/label file pair (big-endian headers).

    Items keep file order; ids are "idx-<position>".
    """
    img_buf = Path(images_path).read_bytes()
    lbl_buf = Path(labels_path).read_bytes()

    magic = _read_be32(img_buf, images_path, 0)
    if magic != IDX_IMAGE_MAGIC:
        raise BadMagic(str(images_path), 0, IDX_IMAGE_MAGIC, magic)
    count = _read_be32(img_buf, images_path, 4)
    rows = _read_be32(img_buf, images_path, 8)
    cols = _read_be32(img_buf, images_path, 12)
    pixel_bytes = count * rows * cols
    if len(img_buf) < 16 + pixel_bytes:
        raise TruncatedFile(str(images_path), len(img_buf), 16 + pixel_bytes - len(img_buf))

    lbl_magic = _read_be32(lbl_buf, labels_path, 0)
    if lbl_magic != IDX_LABEL_MAGIC:
        raise BadMagic(str(labels_path), 0, IDX_LABEL_MAGIC, lbl_magic)
    lbl_count = _read_be32(lbl_buf, labels_path, 4)
    if lbl_count != count:
        raise CountMismatch(str(images_path), count, str(labels_path), lbl_count)
    if len(lbl_buf) < 8 + count:
        raise TruncatedFile(str(labels_path), len(lbl_buf), 8 + count - len(lbl_buf))

    pixels = np.frombuffer(img_buf, dtype=np.uint8, count=pixel_bytes, offset=16)
    labels = np.frombuffer(lbl_buf, dtype=np.uint8, count=count, offset=8)
    size = rows * cols
    return [
        LabeledRaster(
            id=f"idx-{i}",
            label=int(labels[i]),
            width=cols,
            height=rows,
            pixels=pixels[i * size : (i + 1) * size],
        )
        for i in range(count)
    ]


def write_idx(rasters: list[LabeledRaster], images_path, labels_path) -> None:
    """Write rasters to an IDX image/label file pair (inverse of load_idx).

    All rasters must share one width and height.
    """
    if not rasters:
        raise ValueError("cannot write an empty IDX corpus")
    w, h = rasters[0].width, rasters[0].height
    if any(r.width != w or r.height != h for r in rasters):
        raise ValueError("all rasters must share the same dimensions")
    with open(images_path, "wb") as f:
        f.write(struct.pack(">IIII", IDX_IMAGE_MAGIC, len(rasters), h, w))
        for r in rasters:
            f.write(r.pixels.tobytes())
    with open(labels_path, "wb") as f:
        f.write(struct.pack(">II", IDX_LABEL_MAGIC, len(rasters)))
        f.write(bytes(r.label for r in rasters))


def load_image_dir(dir_path) -> list[LabeledRaster]:
    """Load grayscale images named <label>_<index>.png|pgm, sorted by name."""
    from PIL import Image

    dir_path = Path(dir_path)
    rasters = []
    for p in sorted(q for q in dir_path.iterdir() if q.is_file()):
        m = _NAME_RE.match(p.name)
        if m is None:
            raise UnparsableName(p.name)
        with Image.open(p) as img:
            if img.mode != "L":
                raise NonGrayscaleImage(str(p), img.mode)
            arr = np.asarray(img, dtype=np.uint8)
        rasters.append(
            LabeledRaster(
                id=p.stem,
                label=int(m.group(1)),
                width=arr.shape[1],
                height=arr.shape[0],
                pixels=arr.ravel(),
            )
        )
    return rasters


def sample_per_class(
    items: list[LabeledRaster], per_class: int, seed: int
) -> list[LabeledRaster]:
    """Pick exactly per_class items from every class present in `items`.

    Deterministic given the seed; the original relative order is preserved
    (an input that already has exactly per_class items per class is returned
    unchanged).
    """
    if per_class < 1:
        raise ValueError(f"per_class must be >= 1, got {per_class}")
    by_label: dict[int, list[int]] = {}
    for i, item in enumerate(items):
        by_label.setdefault(item.label, []).append(i)

    rng = np.random.default_rng(seed)
    keep: set[int] = set()
    for label in sorted(by_label):
        idxs = by_label[label]
        if len(idxs) < per_class:
            raise InsufficientClassMembers(label, len(idxs), per_class)
        chosen = rng.choice(len(idxs), size=per_class, replace=False)
        keep.update(idxs[j] for j in chosen)
    return [items[i] for i in range(len(items)) if i in keep]


def to_filtration_function(r: LabeledRaster, invert: bool = True) -> ScalarGrid:
    """Normalize a raster into the filtration function f.

    f = pixel/255, or 1 - pixel/255 when inverted. Inversion (the default)
    turns bright strokes on dark background into early-entering values, so
    that loops of the stroke appear as persistent sublevel-set 1-cycles.
    """
    values = r.pixels.astype(np.float64) / 255.0
    if invert:
        values = 1.0 - values
    return ScalarGrid(width=r.width, height=r.height, values=values)
