from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from cubeslices.arrangement import (
    build,
    cell_witnesses,
    count_chambers,
    enumerate_cells_on_flat,
    enumerate_chambers,
    lift_matrix,
    master_arrangement,
    restricted_arrangement,
)
from cubeslices.cube import AFFINE, CENTRAL, CubeSpec, Flat, flat_closure, orbit_reps_flats, vertex_coords
from cubeslices.lp import ConstraintSystem, strict_feasible

from test_linalg import oracle_rank


def whitney_count(normals) -> int:
    """Chambers of a central arrangement: sum over subsets of (-1)^(|S| - rank S)."""
    total = 0
    for r in range(len(normals) + 1):
        for sub in combinations(normals, r):
            total += (-1) ** (r - oracle_rank(list(sub)))
    return total


def brute_signs(normals, dim) -> set:
    out = set()
    for signs in product((1, -1), repeat=len(normals)):
        strict = tuple(tuple(s * x for x in a) for s, a in zip(signs, normals))
        if strict_feasible(ConstraintSystem(dim, (), strict)):
            out.add(signs)
    return out


def _random_arrangements(n_cases=200, seed=20240601):
    rng = random.Random(seed)
    cases = []
    while len(cases) < n_cases:
        dim = rng.randint(1, 4)
        n = rng.randint(1, 6)
        normals = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(n)]
        if any(any(v) for v in normals):
            cases.append((dim, normals))
    return cases


CASES = _random_arrangements()


@pytest.mark.parametrize("idx", range(0, 200, 20))
def test_chamber_oracle_block(idx):
    for dim, normals in CASES[idx : idx + 20]:
        arr = build(normals, dim)
        inc = enumerate_chambers(arr, "incremental")
        walk = enumerate_chambers(arr, "walk")
        signs = [c.sign for c in inc]
        assert len(set(signs)) == len(signs)
        assert signs == [c.sign for c in walk]
        assert len(inc) == whitney_count(list(arr.normals)) == count_chambers(arr)
        assert set(signs) == brute_signs(arr.normals, dim)


def test_build_merges_parallel_normals():
    assert build(vertex_coords(4)).n == 8
    assert master_arrangement(CubeSpec(3, AFFINE)).n == 8
    restricted = [(-2, 0), (2, 0), (0, 2), (-2, 2), (2, 2), (0, 2)]
    arr = build(restricted)
    assert arr.n == 4
    assert count_chambers(arr) == 8
    arr0 = build([(0, 0), (1, 0)])
    assert arr0.dropped == (0,) and arr0.n == 1


def test_trivial_counts():
    assert count_chambers(build([(1, 0), (0, 1)])) == 4
    assert count_chambers(build([(3,)])) == 2


def test_master_counts():
    assert count_chambers(master_arrangement(CubeSpec(3, AFFINE))) == 104
    assert count_chambers(master_arrangement(CubeSpec(4, AFFINE))) == 1882
    assert count_chambers(master_arrangement(CubeSpec(4, CENTRAL))) == 104


def test_cells_on_flats_d3():
    spec = CubeSpec(3, AFFINE)
    assert count_chambers(restricted_arrangement(spec, (0,))[0]) == 32
    cells = enumerate_cells_on_flat(spec, (0, 3))
    assert len(cells) == 8
    v1, v4 = (-1, -1, -1, 1), (1, 1, -1, 1)
    for c in cells:
        assert sum(a * b for a, b in zip(v1, c.witness)) == 0
        assert sum(a * b for a, b in zip(v4, c.witness)) == 0


def test_lifted_witness_pattern():
    # lifted points satisfy x1 = -x2 and x3 = x4, as in the displayed family
    _, _, W = cell_witnesses(CubeSpec(3, AFFINE), Flat((0, 3), flat_closure(CubeSpec(3, AFFINE), (0, 3))))
    assert len(W) == 8
    for w in W:
        assert w[0] == -w[1] and w[2] == w[3]


def test_d4_flat_cell_multisets():
    spec = CubeSpec(4, AFFINE)
    by_rank = {}
    for fl in orbit_reps_flats(spec, 4):
        arr = restricted_arrangement(spec, fl)[0]
        n = count_chambers(arr) if arr.ambient_dim else 0
        by_rank.setdefault(fl.rank, set()).add(n)
    assert by_rank[1] == {370}
    assert by_rank[2] == {32, 60}
    assert by_rank[3] == {6, 8, 10}
    assert by_rank[4] == {2}


def test_lift_matrix_orthogonal():
    spec = CubeSpec(4, AFFINE)
    for fl in orbit_reps_flats(spec, 3):
        arr, chain, _ = restricted_arrangement(spec, fl)
        L = lift_matrix(chain, arr.ambient_dim)
        emb = [tuple(v) + (1,) for v in vertex_coords(4)]
        for v in fl.vertices:
            for j in range(arr.ambient_dim):
                assert sum(emb[v][r] * L[r][j] for r in range(5)) == 0


def test_witnesses_are_exact_fractions():
    ch = enumerate_chambers(build([(1, 1), (1, -1)]))
    assert all(isinstance(x, Fraction) for c in ch for x in c.witness)
