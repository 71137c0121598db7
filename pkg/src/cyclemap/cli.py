"""Command-line pipeline: ingest -> compute -> embed -> serve/export/report.

Exit codes: 0 success, 2 I/O or data error, 64 usage error. Diagnostics go
to stderr; only `export` writes machine output to stdout.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .errors import CycleMapError

USAGE_ERROR = 64
DATA_ERROR = 2


def _load_config_file(path):
    from .project import ProjectConfig

    try:
        return ProjectConfig.from_dict(json.loads(Path(path).read_text()))
    except (ValueError, TypeError) as e:
        raise click.UsageError(f"bad config file {path}: {e}")


@click.group()
def cli():
    """Persistence-based similarity analysis of 2D scalar-field corpora."""


@cli.command()
@click.option("--input", "input_", required=True, help="IDX images file or image directory.")
@click.option("--format", "format_", type=click.Choice(["idx", "dir"]), required=True)
@click.option("--labels", default=None, help="IDX labels file (idx format only).")
@click.option("--per-class", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out", "out_dir", required=True, help="Project directory to create.")
@click.option("--config", "config_path", default=None, help="JSON config supplying defaults.")
def ingest(input_, format_, labels, per_class, seed, out_dir, config_path):
    """Load a corpus, subsample per class, and start a project."""
    from .project import ProjectConfig, ingest_corpus

    if format_ == "idx" and labels is None:
        raise click.UsageError("--format idx requires --labels")
    if config_path is not None:
        base = _load_config_file(config_path).to_dict()
    else:
        base = {}
    base.update(
        input=input_, format=format_, labels=labels, per_class=per_class, seed=seed
    )
    cfg = ProjectConfig.from_dict({**ProjectConfig(input=input_).to_dict(), **base})
    store = ingest_corpus(cfg, out_dir)
    n = len(store.read_json("items.json")["items"])
    click.echo(f"ingested {n} items into {out_dir}", err=True)


def _require_project(project_dir) -> None:
    if not (Path(project_dir) / "config.json").exists():
        raise CycleMapError(f"no project at {project_dir} (missing config.json)")


@cli.command()
@click.option("--project", "project_dir", required=True)
@click.option("--sigma", type=float, default=None, help="Gaussian kernel width.")
@click.option("--resolution", type=click.IntRange(min=1), default=None)
@click.option("--mode", type=click.Choice(["integrate", "sample"]), default=None)
@click.option("--no-invert", is_flag=True, default=False)
@click.option("--threads", type=click.IntRange(min=1), default=None)
def compute(project_dir, sigma, resolution, mode, no_invert, threads):
    """Persistence diagrams, cycles, images, and the distance matrix."""
    from .project import ProjectConfig, ProjectStore, compute_artifacts

    _require_project(project_dir)
    store = ProjectStore(project_dir)
    cfg = store.read_json("config.json")
    if sigma is not None:
        cfg["sigma"] = sigma
    if resolution is not None:
        cfg["resolution"] = resolution
    if mode is not None:
        cfg["mode"] = mode
    if no_invert:
        cfg["invert"] = False
    if threads is not None:
        cfg["threads"] = threads
    store.write_json("config.json", ProjectConfig.from_dict(cfg).to_dict())
    compute_artifacts(store, threads=threads)
    click.echo(f"computed artifacts for {project_dir}", err=True)


@cli.command()
@click.option("--project", "project_dir", required=True)
@click.option("--methods", default="mds,isomap,tsne", show_default=True)
@click.option("--k", type=click.IntRange(min=1), default=None, help="Isomap neighbors.")
@click.option("--perplexity", type=float, default=None)
@click.option("--iterations", type=click.IntRange(min=1), default=None)
@click.option("--learning-rate", type=float, default=None)
@click.option("--seed", type=int, default=None, help="t-SNE init seed.")
def embed(project_dir, methods, k, perplexity, iterations, learning_rate, seed):
    """2D embeddings of the distance matrix."""
    from .project import EMBED_METHODS, ProjectConfig, ProjectStore, embed_project

    _require_project(project_dir)
    requested = tuple(m.strip() for m in methods.split(",") if m.strip())
    for m in requested:
        if m not in EMBED_METHODS:
            raise click.UsageError(
                f"unknown method {m!r} (choose from {', '.join(EMBED_METHODS)})"
            )
    store = ProjectStore(project_dir)
    cfg = store.read_json("config.json")
    cfg["methods"] = list(requested)
    if k is not None:
        cfg["k"] = k
    if perplexity is not None:
        cfg["perplexity"] = perplexity
    if iterations is not None:
        cfg["iterations"] = iterations
    if learning_rate is not None:
        cfg["learning_rate"] = learning_rate
    if seed is not None:
        cfg["embed_seed"] = seed
    store.write_json("config.json", ProjectConfig.from_dict(cfg).to_dict())
    embed_project(store, methods=requested)
    click.echo(f"embedded {', '.join(requested)} for {project_dir}", err=True)


@cli.command()
@click.option("--project", "project_dir", required=True)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui", "ui_dir", default=None, help="Static UI bundle directory.")
def serve(project_dir, port, host, ui_dir):
    """Serve the explorer API (and UI bundle, when provided)."""
    from .server import serve as run_server

    _require_project(project_dir)
    if ui_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        ui_dir = bundled if bundled.is_dir() else None
    click.echo(f"serving {project_dir} on http://{host}:{port}", err=True)
    run_server(project_dir, port=port, host=host, ui_dir=ui_dir)


@cli.command()
@click.option("--project", "project_dir", required=True)
@click.option("--what", type=click.Choice(["distances", "embedding", "pimages"]), required=True)
@click.option("--format", "format_", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--out", "out_path", default="-", show_default=True,
              help="Output file, or - for stdout.")
@click.option("--method", default=None, help="Embedding method (for --what embedding).")
def export(project_dir, what, format_, out_path, method):
    """Write distances, an embedding, or persistence images as CSV/JSON."""
    import csv as csv_mod
    import io

    from .project import load_project

    _require_project(project_dir)
    project = load_project(project_dir)
    buf = io.StringIO()

    if what == "distances":
        if project.distances is None:
            raise CycleMapError("project has no distances.bin; run `compute` first")
        if format_ == "csv":
            writer = csv_mod.writer(buf)
            writer.writerow(project.distances.item_ids)
            writer.writerows(project.distances.d.tolist())
        else:
            json.dump(
                {"item_ids": list(project.distances.item_ids),
                 "distances": project.distances.d.tolist()},
                buf,
            )
    elif what == "embedding":
        if not project.embeddings:
            raise CycleMapError("project has no embeddings.json; run `embed` first")
        if method is None and format_ == "csv":
            raise click.UsageError("--what embedding with csv needs --method")
        if method is not None and method not in project.embeddings:
            raise CycleMapError(f"embedding {method!r} not computed")
        labels = {r.id: r.label for r in project.items}
        if format_ == "csv":
            emb = project.embeddings[method]
            writer = csv_mod.writer(buf)
            writer.writerow(["id", "label", "x", "y"])
            for item_id, (x, y) in zip(emb.item_ids, emb.coords):
                writer.writerow([item_id, labels[item_id], float(x), float(y)])
        else:
            chosen = [method] if method else sorted(project.embeddings)
            out = {
                m: {
                    "params": project.embeddings[m].params,
                    "coords": project.embeddings[m].coords.tolist(),
                }
                for m in chosen
            }
            json.dump({"item_ids": project.item_ids, "methods": out}, buf)
    else:
        labels = {r.id: r.label for r in project.items}
        if format_ == "csv":
            writer = csv_mod.writer(buf)
            res = project.config.resolution
            writer.writerow(["id", "label"] + [f"p{k}" for k in range(res * res)])
            for r in project.items:
                writer.writerow([r.id, labels[r.id]] + project.pimages[r.id].pixels.tolist())
        else:
            json.dump(
                [
                    {"id": r.id, "label": labels[r.id],
                     "resolution": project.pimages[r.id].resolution,
                     "pixels": project.pimages[r.id].pixels.tolist()}
                    for r in project.items
                ],
                buf,
            )

    text = buf.getvalue()
    if out_path == "-":
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)
        click.echo(f"wrote {out_path}", err=True)


@cli.command()
@click.option("--project", "project_dir", required=True)
@click.option("--out", "out_dir", required=True, help="Directory for figures + summary.csv.")
def report(project_dir, out_dir):
    """Render embedding/persistence-image figures and a per-item summary."""
    from .project import load_project
    from .report import write_report

    _require_project(project_dir)
    written = write_report(load_project(project_dir), out_dir)
    for p in written:
        click.echo(f"wrote {p}", err=True)


@cli.command()
@click.option("--out", "out_dir", required=True)
@click.option("--threads", type=click.IntRange(min=1), default=None)
def demo(out_dir, threads):
    """Build a small synthetic project end to end (strokes vs double rings)."""
    from .demo import build_toy_project

    build_toy_project(out_dir, threads=threads)
    click.echo(f"demo project ready at {out_dir}", err=True)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return USAGE_ERROR
    except click.ClickException as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return DATA_ERROR
    except (CycleMapError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        return DATA_ERROR


def entrypoint():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
