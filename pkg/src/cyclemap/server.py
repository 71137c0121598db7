"""Read-only HTTP JSON API over a loaded project, plus static UI hosting."""

from __future__ import annotations

import base64
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from . import project as project_mod
from .vectorize import pixel_diff

DEFAULT_PORT = 8080


def create_app(project=None, ui_dir=None) -> FastAPI:
    """API over an already-loaded project; `attach_project` swaps it in later.

    Endpoints answer 503 until a project is attached.
    """
    app = FastAPI(title="cyclemap explorer API")
    app.state.project = project
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def current():
        p = app.state.project
        if p is None:
            raise HTTPException(status_code=503, detail="project not loaded yet")
        return p

    @app.get("/api/meta")
    def meta():
        p = current()
        return {
            "n": p.n,
            "labels": {str(k): v for k, v in p.label_histogram().items()},
            "methods": sorted(p.embeddings),
            "global_max_persistence": p.global_max_persistence(),
            "resolution": p.config.resolution,
        }

    @app.get("/api/embedding")
    def embedding(method: str):
        p = current()
        if method not in p.embeddings:
            raise HTTPException(status_code=404, detail=f"unknown method {method!r}")
        emb = p.embeddings[method]
        labels = {r.id: r.label for r in p.items}
        return [
            {"id": item_id, "x": float(x), "y": float(y), "label": labels[item_id]}
            for item_id, (x, y) in zip(emb.item_ids, emb.coords)
        ]

    @app.get("/api/item/{item_id}")
    def item_detail(item_id: str):
        p = current()
        raster = next((r for r in p.items if r.id == item_id), None)
        if raster is None:
            raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}")
        diagram = p.diagrams[item_id]
        image = p.pimages[item_id]
        w = raster.width
        return {
            "id": item_id,
            "label": raster.label,
            "raster": {
                "width": raster.width,
                "height": raster.height,
                "pixels_b64": base64.b64encode(raster.pixels.tobytes()).decode(),
            },
            "pairs": [
                {"birth": q.birth, "death": q.death, "persistence": q.persistence}
                for q in diagram.pairs
                if q.dim == 1
            ],
            "cycles": [
                {
                    "pair_index": c["pair_index"],
                    "persistence": c["persistence"],
                    "edges": [
                        [[a // w, a % w], [b // w, b % w]] for a, b in c["edges"]
                    ],
                }
                for c in p.cycles[item_id]
            ],
            "image": {"resolution": image.resolution, "pixels": image.pixels.tolist()},
        }

    @app.get("/api/diff")
    def diff(a: str, b: str):
        p = current()
        for item_id in (a, b):
            if item_id not in p.pimages:
                raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}")
        sd = pixel_diff(p.pimages[a], p.pimages[b])
        return {"sorted": [[k, v] for k, v in sd.pairs], "max_diff": sd.max_diff}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def attach_project(app: FastAPI, project) -> None:
    app.state.project = project


def serve(project_dir, port: int = DEFAULT_PORT, host: str = "127.0.0.1", ui_dir=None):
    """Serve a project directory; loading happens in the background so the
    server answers (with 503) immediately."""
    import uvicorn

    app = create_app(ui_dir=ui_dir)

    def load():
        attach_project(app, project_mod.load_project(project_dir))

    threading.Thread(target=load, daemon=True).start()
    uvicorn.run(app, host=host, port=port, log_level="warning")
