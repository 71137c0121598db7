import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_grid
from cyclemap.filtration import Filtration, build_complex, lower_star_filtration
from cyclemap.ingest import ScalarGrid
from cyclemap.persistence import (
    extract_pairs,
    filter_by_persistence,
    reduce,
    representative_cycles,
)
from oracle_betti import betti_curve, diagram_betti


def single_triangle_filtration():
    return Filtration.from_simplices(
        [
            ((0,), 0.1),
            ((1,), 0.2),
            ((2,), 0.3),
            ((0, 1), 0.2),
            ((0, 2), 0.3),
            ((1, 2), 0.3),
            ((0, 1, 2), 0.3),
        ]
    )


def test_single_triangle_hand_reduction():
    f = single_triangle_filtration()
    m = reduce(f)
    d = extract_pairs(m, f, keep_zero=True)
    dim0 = sorted((p.birth, p.death) for p in d.pairs if p.dim == 0)
    dim1 = [(p.birth, p.death) for p in d.pairs if p.dim == 1]
    assert dim0 == [(0.2, 0.2), (0.3, 0.3)]
    assert dim1 == [(0.3, 0.3)]
    assert d.essential == ((0, 0.1),)

    cycles = representative_cycles(m, d)
    assert len(cycles) == 1
    assert sorted(cycles[0].edges) == [(0, 1), (0, 2), (1, 2)]


def test_uniform_grid_all_zero_persistence():
    g = ScalarGrid(width=2, height=2, values=np.full(4, 0.5))
    f = lower_star_filtration(build_complex(2, 2), g)
    m = reduce(f)
    d = extract_pairs(m, f)
    assert d.pairs == ()
    assert d.essential == ((0, 0.5),)

    dz = extract_pairs(m, f, keep_zero=True)
    assert all(p.persistence == 0.0 for p in dz.pairs)
    # V-1 = 3 vertex-edge pairs, E-V+1 = 2 edge-triangle pairs
    assert len([p for p in dz.pairs if p.dim == 0]) == 3
    assert len([p for p in dz.pairs if p.dim == 1]) == 2
    assert 2 * len(dz.pairs) + len(dz.essential) == len(f)


def test_ring_grid_pair_and_cycle(ring_filtration):
    f = ring_filtration
    m = reduce(f)
    d = extract_pairs(m, f)
    dim1 = [p for p in d.pairs if p.dim == 1]
    assert len(dim1) == 1
    assert (dim1[0].birth, dim1[0].death) == (0.2, 0.9)
    assert [(p.birth, p.death) for p in d.pairs if p.dim == 0] == [(0.1, 0.2)]
    assert d.essential == ((0, 0.1),)

    (cycle,) = representative_cycles(m, d)
    degree: dict[int, int] = {}
    for a, b in cycle.edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    assert all(v % 2 == 0 for v in degree.values())
    assert max(max(f.values[f.position(e)] for e in cycle.edges), 0) == dim1[0].birth
    # never touches the center vertex, whose value is the death
    assert 4 not in degree
    # hand-derived reduced column for this grid
    assert sorted(cycle.edges) == [(0, 1), (0, 3), (1, 5), (3, 7), (5, 8), (7, 8)]


def test_ring_grid_matches_betti_oracle(ring_grid, ring_filtration):
    m = reduce(ring_filtration)
    d = extract_pairs(m, ring_filtration, keep_zero=True)
    for t, b0, b1 in betti_curve(ring_grid.values, 3, 3):
        assert diagram_betti(d, 0, t) == b0
        assert diagram_betti(d, 1, t) == b1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_matching_conservation(w, h, seed):
    g = random_grid(np.random.default_rng(seed), w, h)
    f = lower_star_filtration(build_complex(w, h), g)
    m = reduce(f)
    d = extract_pairs(m, f, keep_zero=True)
    assert 2 * len(d.pairs) + len(d.essential) == len(f)
    # the disk complex has exactly one essential class, in dimension 0
    assert d.essential == ((0, float(min(g.values))),)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_betti_oracle_equivalence_random_grids(w, h, seed):
    g = random_grid(np.random.default_rng(seed), w, h)
    f = lower_star_filtration(build_complex(w, h), g)
    d = extract_pairs(reduce(f), f, keep_zero=True)
    for t, b0, b1 in betti_curve(g.values, w, h):
        assert diagram_betti(d, 0, t) == b0, (t, "dim0")
        assert diagram_betti(d, 1, t) == b1, (t, "dim1")


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_cycle_invariants_random_grids(w, h, seed):
    g = random_grid(np.random.default_rng(seed), w, h)
    f = lower_star_filtration(build_complex(w, h), g)
    m = reduce(f)
    d = extract_pairs(m, f)
    for cycle in representative_cycles(m, d):
        assert len(cycle.edges) > 0
        degree: dict[int, int] = {}
        for a, b in cycle.edges:
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        assert all(v % 2 == 0 for v in degree.values())
        assert max(f.values[f.position(e)] for e in cycle.edges) == cycle.pair.birth


def test_determinism(ring_grid):
    c = build_complex(3, 3)
    runs = []
    for _ in range(2):
        f = lower_star_filtration(c, ring_grid)
        m = reduce(f)
        d = extract_pairs(m, f)
        runs.append((d.pairs, tuple(c.edges for c in representative_cycles(m, d))))
    assert runs[0] == runs[1]


def test_no_dim1_pairs_yields_no_cycles():
    g = ScalarGrid(width=2, height=2, values=np.array([0.1, 0.2, 0.3, 0.4]))
    f = lower_star_filtration(build_complex(2, 2), g)
    m = reduce(f)
    d = extract_pairs(m, f)
    assert representative_cycles(m, d) == []


def test_filter_by_persistence(ring_filtration):
    m = reduce(ring_filtration)
    d = extract_pairs(m, ring_filtration)
    cycles = representative_cycles(m, d)  # one cycle, persistence 0.7

    assert filter_by_persistence(cycles, 0.0) == cycles
    assert filter_by_persistence(cycles, 0.5) == cycles
    assert filter_by_persistence(cycles, 0.7) == cycles
    assert filter_by_persistence(cycles, 0.71) == []
    assert filter_by_persistence(cycles, 1.0) == []
    with pytest.raises(ValueError):
        filter_by_persistence(cycles, 1.5)
    with pytest.raises(ValueError):
        filter_by_persistence(cycles, -0.1)


def test_filter_keeps_stable_order():
    f = single_triangle_filtration()
    m = reduce(f)
    d = extract_pairs(m, f, keep_zero=True)
    cycles = representative_cycles(m, d)
    assert filter_by_persistence(cycles, 0.0) == cycles
