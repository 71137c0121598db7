"""Persistent homology by boundary-matrix column reduction over GF(2),
with persistence pairs and explicit representative 1-cycles."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .filtration import Filtration


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float
    birth_simplex: int  # filtration position of the creating simplex
    death_simplex: int  # filtration position of the destroying simplex

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    item_id: str
    pairs: tuple[PersistencePair, ...]
    essential: tuple[tuple[int, float], ...]  # (dim, birth) classes that never die

    def pairs_in_dim(self, dim: int) -> list[PersistencePair]:
        return [p for p in self.pairs if p.dim == dim]

    def max_persistence(self, dim: int = 1) -> float:
        return max((p.persistence for p in self.pairs if p.dim == dim), default=0.0)


@dataclass(frozen=True)
class PersistenceCycle:
    """Explicit 1-chain representing a dim-1 class: the reduced column of the
    death triangle, as a set of edges (vertex-id pairs)."""

    pair: PersistencePair
    edges: tuple[tuple[int, int], ...]


@dataclass
class ReducedMatrix:
    filtration: Filtration
    columns: list[set[int]]          # reduced column of each simplex (row positions)
    lows: np.ndarray = field(repr=False)  # low(j) per column, -1 where zero


def reduce(f: Filtration) -> ReducedMatrix:
    """Left-to-right column reduction of the boundary matrix.

    While some earlier reduced column shares the current column's lowest
    nonzero row, add it in (XOR over GF(2)); on termination every nonzero
    column has a distinct low.
    """
    n = len(f)
    columns: list[set[int]] = [set(rows) for rows in f.boundary]
    lows = np.full(n, -1, dtype=np.int64)
    pivot_owner: dict[int, int] = {}
    for j in range(n):
        col = columns[j]
        while col:
            low = max(col)
            k = pivot_owner.get(low)
            if k is None:
                pivot_owner[low] = j
                lows[j] = low
                break
            col ^= columns[k]
    return ReducedMatrix(filtration=f, columns=columns, lows=lows)


def extract_pairs(
    m: ReducedMatrix, f: Filtration, keep_zero: bool = False, item_id: str = ""
) -> PersistenceDiagram:
    """Read persistence pairs off a reduced matrix.

    Each nonzero column j pairs (low(j), j); unpaired simplices become
    essential classes. Pairs with death == birth are dropped unless
    keep_zero is set.
    """
    if m.filtration is not f:
        raise ValueError("reduced matrix was not produced from this filtration")
    n = len(f)
    pairs = []
    paired = np.zeros(n, dtype=bool)
    for j in range(n):
        low = int(m.lows[j])
        if low < 0:
            continue
        paired[low] = True
        paired[j] = True
        birth, death = float(f.values[low]), float(f.values[j])
        if not keep_zero and death == birth:
            continue
        pairs.append(
            PersistencePair(
                dim=f.dim(low),
                birth=birth,
                death=death,
                birth_simplex=low,
                death_simplex=j,
            )
        )
    essential = tuple(
        (f.dim(i), float(f.values[i])) for i in range(n) if not paired[i]
    )
    return PersistenceDiagram(item_id=item_id, pairs=tuple(pairs), essential=essential)


def representative_cycles(
    m: ReducedMatrix, d: PersistenceDiagram
) -> list[PersistenceCycle]:
    """Representative 1-cycle of every dim-1 pair in `d`.

    The reduced column of the death triangle is a closed edge set whose
    largest filtration value sits on the birth edge.
    """
    f = m.filtration
    cycles = []
    for pair in d.pairs:
        if pair.dim != 1:
            continue
        rows = sorted(m.columns[pair.death_simplex])
        edges = tuple(f.simplices[r] for r in rows)
        cycles.append(PersistenceCycle(pair=pair, edges=edges))
    return cycles


def filter_by_persistence(
    cycles: list[PersistenceCycle], tau: float
) -> list[PersistenceCycle]:
    """Keep exactly the cycles whose pair persists at least tau; stable order."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be within [0, 1], got {tau}")
    return [c for c in cycles if c.pair.persistence >= tau]
