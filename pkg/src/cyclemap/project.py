"""Project directory: run the full pipeline and persist/load all artifacts.

Layout: config.json, items.json, diagrams/<id>.json, cycles/<id>.json,
pimages/<id>.json, distances.bin (row-major little-endian float64),
embeddings.json, manifest.json (SHA-256 checksums + pipeline version).
"""

from __future__ import annotations

import base64
import concurrent.futures
import hashlib
import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, ingest, vectorize
from .errors import ChecksumMismatch, CycleMapError, MissingArtifact, VersionMismatch
from .filtration import lower_star_filtration, shared_complex
from .persistence import (
    PersistenceDiagram,
    PersistencePair,
    extract_pairs,
    reduce,
    representative_cycles,
)

PIPELINE_VERSION = "1"

EMBED_METHODS = ("mds", "isomap", "tsne")


@dataclass(frozen=True)
class ProjectConfig:
    input: str
    format: str = "idx"  # idx | dir
    labels: str | None = None  # labels file for idx input
    per_class: int = 100
    seed: int = 42
    invert: bool = True
    sigma: float = 0.01
    resolution: int = 10
    mode: str = "integrate"  # integrate | sample
    methods: tuple[str, ...] = EMBED_METHODS
    k: int = 10
    perplexity: float = 30.0
    iterations: int = 1000
    learning_rate: float = 200.0
    embed_seed: int = 42
    threads: int | None = None

    def __post_init__(self):
        if self.format not in ("idx", "dir"):
            raise ValueError(f"format must be 'idx' or 'dir', got {self.format!r}")
        if self.mode not in ("integrate", "sample"):
            raise ValueError(f"mode must be 'integrate' or 'sample', got {self.mode!r}")
        if self.per_class < 1:
            raise ValueError("per_class must be >= 1")
        if self.sigma <= 0 or self.resolution < 1:
            raise ValueError("sigma must be > 0 and resolution >= 1")
        object.__setattr__(self, "methods", tuple(self.methods))
        for m in self.methods:
            if m not in EMBED_METHODS:
                raise ValueError(f"unknown embedding method {m!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["methods"] = list(self.methods)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ProjectConfig":
        d = dict(d)
        if "methods" in d:
            d["methods"] = tuple(d["methods"])
        return cls(**d)


def _dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class ProjectStore:
    """Filesystem layout of one project; all writes are atomic."""

    def __init__(self, root):
        self.root = Path(root)

    def path(self, rel: str) -> Path:
        return self.root / rel

    def write_bytes(self, rel: str, data: bytes) -> None:
        target = self.path(rel)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(data)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def write_json(self, rel: str, obj) -> None:
        self.write_bytes(rel, _dumps(obj))

    def read_json(self, rel: str):
        return json.loads(self.path(rel).read_text())

    def tracked_files(self) -> list[str]:
        rels = []
        for rel in ("config.json", "items.json", "distances.bin", "embeddings.json"):
            if self.path(rel).exists():
                rels.append(rel)
        for sub in ("diagrams", "cycles", "pimages"):
            d = self.path(sub)
            if d.is_dir():
                rels.extend(sorted(f"{sub}/{p.name}" for p in d.glob("*.json")))
        return rels

    def update_manifest(self) -> None:
        checksums = {
            rel: _sha256(self.path(rel).read_bytes()) for rel in self.tracked_files()
        }
        self.write_json(
            "manifest.json", {"pipeline_version": PIPELINE_VERSION, "files": checksums}
        )


@dataclass
class Project:
    """A fully loaded project, cross-indexed by item id."""

    store: ProjectStore
    config: ProjectConfig
    items: list[ingest.LabeledRaster]
    diagrams: dict[str, PersistenceDiagram]
    cycles: dict[str, list[dict]]
    pimages: dict[str, vectorize.PersistenceImage]
    distances: analysis.DistanceMatrix | None
    embeddings: dict[str, analysis.Embedding]

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def item_ids(self) -> list[str]:
        return [r.id for r in self.items]

    def label_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for r in self.items:
            hist[r.label] = hist.get(r.label, 0) + 1
        return dict(sorted(hist.items()))

    def global_max_persistence(self) -> float:
        return max((d.max_persistence(1) for d in self.diagrams.values()), default=0.0)


# --- serialization helpers --------------------------------------------------

def _raster_to_json(r: ingest.LabeledRaster) -> dict:
    return {
        "id": r.id,
        "label": r.label,
        "width": r.width,
        "height": r.height,
        "pixels_b64": base64.b64encode(r.pixels.tobytes()).decode(),
    }


def _raster_from_json(d: dict) -> ingest.LabeledRaster:
    return ingest.LabeledRaster(
        id=d["id"],
        label=d["label"],
        width=d["width"],
        height=d["height"],
        pixels=np.frombuffer(base64.b64decode(d["pixels_b64"]), dtype=np.uint8),
    )


def _diagram_to_json(d: PersistenceDiagram) -> dict:
    return {
        "item_id": d.item_id,
        "pairs": [
            {
                "dim": p.dim,
                "birth": p.birth,
                "death": p.death,
                "persistence": p.persistence,
                "birth_simplex": p.birth_simplex,
                "death_simplex": p.death_simplex,
            }
            for p in d.pairs
        ],
        "essential": [{"dim": dim, "birth": birth} for dim, birth in d.essential],
    }


def _diagram_from_json(d: dict) -> PersistenceDiagram:
    return PersistenceDiagram(
        item_id=d["item_id"],
        pairs=tuple(
            PersistencePair(
                dim=p["dim"],
                birth=p["birth"],
                death=p["death"],
                birth_simplex=p["birth_simplex"],
                death_simplex=p["death_simplex"],
            )
            for p in d["pairs"]
        ),
        essential=tuple((e["dim"], e["birth"]) for e in d["essential"]),
    )


def _embedding_to_json(e: analysis.Embedding) -> dict:
    diag = {
        k: (v.tolist() if isinstance(v, np.ndarray) else v)
        for k, v in e.diagnostics.items()
    }
    return {
        "method": e.method,
        "params": e.params,
        "seed": e.seed,
        "coords": e.coords.tolist(),
        "diagnostics": diag,
    }


# --- per-item compute -------------------------------------------------------

def compute_item(
    raster: ingest.LabeledRaster,
    invert: bool,
    sigma: float,
    resolution: int,
    mode: str,
) -> tuple[dict, dict, dict]:
    """Stage 1+2 for one item: diagram, representative cycles, persistence image.

    Returns the three artifacts in their JSON forms.
    """
    grid = ingest.to_filtration_function(raster, invert=invert)
    complex_ = shared_complex(raster.width, raster.height)
    filt = lower_star_filtration(complex_, grid)
    reduced = reduce(filt)
    diagram = extract_pairs(reduced, filt, keep_zero=False, item_id=raster.id)
    cycles = representative_cycles(reduced, diagram)
    image = vectorize.persistence_image(
        diagram, n=resolution, sigma=sigma, mode=mode, item_id=raster.id
    )

    dim1 = [p for p in diagram.pairs if p.dim == 1]
    cycles_json = {
        "item_id": raster.id,
        "cycles": [
            {
                "pair_index": dim1.index(c.pair),
                "birth": c.pair.birth,
                "death": c.pair.death,
                "persistence": c.pair.persistence,
                "edges": [[int(a), int(b)] for a, b in c.edges],
            }
            for c in cycles
        ],
    }
    image_json = {
        "item_id": raster.id,
        "resolution": image.resolution,
        "pixels": image.pixels.tolist(),
    }
    return _diagram_to_json(diagram), cycles_json, image_json


def _compute_worker(args):
    raster_json, invert, sigma, resolution, mode = args
    try:
        return compute_item(
            _raster_from_json(raster_json), invert, sigma, resolution, mode
        )
    except Exception as e:
        raise CycleMapError(
            f"computing artifacts for item {raster_json['id']!r}: {e}"
        ) from e


# --- pipeline stages ---------------------------------------------------------

def ingest_corpus(cfg: ProjectConfig, out_dir) -> ProjectStore:
    """Load, subsample, and persist the corpus items plus the config."""
    if cfg.format == "idx":
        if cfg.labels is None:
            raise CycleMapError("idx format needs a labels file (config field 'labels')")
        items = ingest.load_idx(cfg.input, cfg.labels)
    else:
        items = ingest.load_image_dir(cfg.input)
    items = ingest.sample_per_class(items, cfg.per_class, cfg.seed)

    store = ProjectStore(out_dir)
    store.root.mkdir(parents=True, exist_ok=True)
    store.write_json("config.json", cfg.to_dict())
    store.write_json("items.json", {"items": [_raster_to_json(r) for r in items]})
    store.update_manifest()
    return store


def compute_artifacts(store: ProjectStore, threads: int | None = None) -> None:
    """Stage 1+2 for every item, then the pairwise distance matrix."""
    cfg = ProjectConfig.from_dict(store.read_json("config.json"))
    items_json = store.read_json("items.json")["items"]
    jobs = [
        (r, cfg.invert, cfg.sigma, cfg.resolution, cfg.mode) for r in items_json
    ]
    if threads is None:
        threads = cfg.threads or 1
    if threads > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_compute_worker, jobs, chunksize=16))
    else:
        results = [_compute_worker(j) for j in jobs]

    pixels = []
    for item, (diagram_json, cycles_json, image_json) in zip(items_json, results):
        item_id = item["id"]
        store.write_json(f"diagrams/{item_id}.json", diagram_json)
        store.write_json(f"cycles/{item_id}.json", cycles_json)
        store.write_json(f"pimages/{item_id}.json", image_json)
        pixels.append(image_json["pixels"])

    images = [
        vectorize.PersistenceImage(item_id=it["id"], resolution=cfg.resolution, pixels=px)
        for it, px in zip(items_json, pixels)
    ]
    dm = analysis.distance_matrix(images)
    store.write_bytes("distances.bin", dm.d.astype("<f8").tobytes())
    store.update_manifest()


def embed_project(store: ProjectStore, methods: tuple[str, ...] | None = None) -> None:
    """All requested 2D embeddings of the stored distance matrix."""
    cfg = ProjectConfig.from_dict(store.read_json("config.json"))
    if methods is None:
        methods = cfg.methods
    item_ids = tuple(r["id"] for r in store.read_json("items.json")["items"])
    n = len(item_ids)
    raw = np.frombuffer(store.path("distances.bin").read_bytes(), dtype="<f8")
    dm = analysis.DistanceMatrix(item_ids=item_ids, d=raw.reshape(n, n).astype(np.float64))

    out = {}
    for method in methods:
        if method == "mds":
            emb = analysis.classical_mds(dm)
        elif method == "isomap":
            emb = analysis.isomap(dm, k=cfg.k)
        else:
            emb = analysis.tsne(
                dm,
                perplexity=cfg.perplexity,
                iterations=cfg.iterations,
                learning_rate=cfg.learning_rate,
                seed=cfg.embed_seed,
            )
        out[method] = _embedding_to_json(emb)
    store.write_json("embeddings.json", {"item_ids": list(item_ids), "methods": out})
    store.update_manifest()


def run_pipeline(cfg: ProjectConfig, out_dir) -> ProjectStore:
    """ingest -> per-item persistence artifacts -> distances -> embeddings."""
    store = ingest_corpus(cfg, out_dir)
    compute_artifacts(store, threads=cfg.threads)
    embed_project(store)
    return store


def load_project(dir_path) -> Project:
    """Load and cross-index a project, verifying manifest checksums first."""
    store = ProjectStore(dir_path)
    manifest_path = store.path("manifest.json")
    if not manifest_path.exists():
        raise MissingArtifact("(project)", "manifest.json")
    manifest = store.read_json("manifest.json")
    if manifest.get("pipeline_version") != PIPELINE_VERSION:
        raise VersionMismatch(PIPELINE_VERSION, manifest.get("pipeline_version"))
    for rel, expected in manifest["files"].items():
        p = store.path(rel)
        if not p.exists():
            raise MissingArtifact(Path(rel).stem, rel.split("/")[0])
        if _sha256(p.read_bytes()) != expected:
            raise ChecksumMismatch(rel)

    cfg = ProjectConfig.from_dict(store.read_json("config.json"))
    items = [_raster_from_json(d) for d in store.read_json("items.json")["items"]]

    diagrams, cycles, pimages = {}, {}, {}
    for r in items:
        for kind in ("diagrams", "cycles", "pimages"):
            if f"{kind}/{r.id}.json" not in manifest["files"]:
                raise MissingArtifact(r.id, kind)
        diagrams[r.id] = _diagram_from_json(store.read_json(f"diagrams/{r.id}.json"))
        cycles[r.id] = store.read_json(f"cycles/{r.id}.json")["cycles"]
        img = store.read_json(f"pimages/{r.id}.json")
        pimages[r.id] = vectorize.PersistenceImage(
            item_id=r.id, resolution=img["resolution"], pixels=img["pixels"]
        )

    distances = None
    if store.path("distances.bin").exists():
        n = len(items)
        raw = np.frombuffer(store.path("distances.bin").read_bytes(), dtype="<f8")
        distances = analysis.DistanceMatrix(
            item_ids=tuple(r.id for r in items), d=raw.reshape(n, n).astype(np.float64)
        )

    embeddings = {}
    if store.path("embeddings.json").exists():
        data = store.read_json("embeddings.json")
        for method, e in data["methods"].items():
            embeddings[method] = analysis.Embedding(
                method=method,
                item_ids=tuple(data["item_ids"]),
                coords=np.asarray(e["coords"], dtype=np.float64),
                params=e["params"],
                seed=e["seed"],
                diagnostics=e.get("diagnostics", {}),
            )

    return Project(
        store=store,
        config=cfg,
        items=items,
        diagrams=diagrams,
        cycles=cycles,
        pimages=pimages,
        distances=distances,
        embeddings=embeddings,
    )
