"""Triangulated grid complexes and lower-star (sublevel-set) filtrations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, GridTooSmall
from .ingest import ScalarGrid


@dataclass(frozen=True)
class SimplicialComplex:
    """Freudenthal triangulation of a width x height pixel grid.

    Vertex id = row*width + col. Each unit square contributes its horizontal,
    vertical and top-left-to-bottom-right diagonal edge plus two triangles,
    so the full complex is a topological disk (Euler characteristic 1).
    """

    width: int
    height: int
    edges: np.ndarray = field(repr=False)      # (E, 2) vertex ids, each row sorted
    triangles: np.ndarray = field(repr=False)  # (T, 3) vertex ids, each row sorted

    @property
    def vertex_count(self) -> int:
        return self.width * self.height

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges) + len(self.triangles)


def build_complex(width: int, height: int) -> SimplicialComplex:
    if width < 2 or height < 2:
        raise GridTooSmall(width, height)
    edges = []
    triangles = []
    for r in range(height):
        base = r * width
        for c in range(width):
            v = base + c
            right, down, diag = v + 1, v + width, v + width + 1
            if c + 1 < width:
                edges.append((v, right))
            if r + 1 < height:
                edges.append((v, down))
            if c + 1 < width and r + 1 < height:
                edges.append((v, diag))
                triangles.append((v, right, diag))
                triangles.append((v, down, diag))
    return SimplicialComplex(
        width=width,
        height=height,
        edges=np.asarray(edges, dtype=np.int64),
        triangles=np.asarray(triangles, dtype=np.int64),
    )


@lru_cache(maxsize=8)
def shared_complex(width: int, height: int) -> SimplicialComplex:
    """Complex template shared read-only across all items of equal size."""
    return build_complex(width, height)


class Filtration:
    """All simplices of a complex in a deterministic total order.

    The order sorts by (value, dimension, vertex tuple) ascending, which
    guarantees every face precedes every coface: a face never has a larger
    value than its coface under the lower-star rule, and at equal values the
    lower dimension wins.
    """

    def __init__(self, simplices: list[tuple[int, ...]], values: np.ndarray):
        self.simplices = simplices
        self.values = np.asarray(values, dtype=np.float64)
        self._position = {s: i for i, s in enumerate(simplices)}
        self._boundary: list[list[int]] | None = None

    def __len__(self) -> int:
        return len(self.simplices)

    def position(self, simplex: tuple[int, ...]) -> int:
        return self._position[simplex]

    def dim(self, pos: int) -> int:
        return len(self.simplices[pos]) - 1

    @property
    def boundary(self) -> list[list[int]]:
        """Positions of the codimension-1 faces of each simplex."""
        if self._boundary is None:
            rows = []
            for s in self.simplices:
                if len(s) == 1:
                    rows.append([])
                else:
                    faces = [s[:i] + s[i + 1 :] for i in range(len(s))]
                    rows.append(sorted(self._position[f] for f in faces))
            self._boundary = rows
        return self._boundary

    @classmethod
    def from_simplices(cls, entries: list[tuple[tuple[int, ...], float]]) -> "Filtration":
        """Build a filtration from explicit (simplex, value) pairs.

        Simplex vertex tuples are canonicalized to sorted order; every face
        of every simplex must itself be listed.
        """
        canon = [(tuple(sorted(s)), float(v)) for s, v in entries]
        canon.sort(key=lambda e: (e[1], len(e[0]), e[0]))
        simplices = [s for s, _ in canon]
        values = np.array([v for _, v in canon])
        f = cls(simplices, values)
        f.boundary  # raises KeyError on a missing face
        return f


def lower_star_filtration(c: SimplicialComplex, g: ScalarGrid) -> Filtration:
    """Order all simplices of `c` by the max of their vertices' values in `g`."""
    if (g.width, g.height) != (c.width, c.height):
        raise DimensionMismatch((c.width, c.height), (g.width, g.height))
    v = g.values
    edge_vals = np.maximum(v[c.edges[:, 0]], v[c.edges[:, 1]])
    tri_vals = np.maximum(
        np.maximum(v[c.triangles[:, 0]], v[c.triangles[:, 1]]), v[c.triangles[:, 2]]
    )

    entries: list[tuple[float, int, tuple[int, ...]]] = []
    entries.extend((v[i], 0, (i,)) for i in range(c.vertex_count))
    entries.extend(
        (edge_vals[i], 1, (int(a), int(b))) for i, (a, b) in enumerate(c.edges)
    )
    entries.extend(
        (tri_vals[i], 2, (int(a), int(b), int(q)))
        for i, (a, b, q) in enumerate(c.triangles)
    )
    entries.sort(key=lambda e: (e[0], e[1], e[2]))
    return Filtration([s for _, _, s in entries], np.array([val for val, _, _ in entries]))
