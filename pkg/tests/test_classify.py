from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest

from cubeslices.classify import (
    check_central_intersection_conjecture,
    check_generic_central_edge_criterion,
    classify,
    cube_type_key,
    labeling_orbit_keys,
    max_vertex_bound,
    max_vertex_construction,
    process_flat,
    cube_section_hyperplane,
    uncolored_graph_key,
    vertex_count_distribution,
    vertex_gap_report,
)
from cubeslices.combtype import canonical_key
from cubeslices.cube import AFFINE, CENTRAL, CubeSpec, orbit_reps_flats, vertex_coords
from cubeslices.linalg import kernel_basis, RationalMatrix
from cubeslices.slices import Hyperplane, build_slice, euler_ok

from conftest import STRETCH, cached_run


def test_affine_d3_breakdown():
    run = cached_run(3, AFFINE)
    assert run.n_types == 4
    assert vertex_count_distribution(run) == {3: 1, 4: 1, 5: 1, 6: 1}
    # all four polygons are realized by generic planes
    assert run.per_k_counts()[0] == 4


def test_central_breakdowns():
    assert cached_run(3, CENTRAL).per_k_counts() == [2, 1, 1]
    r4 = cached_run(4, CENTRAL)
    assert (r4.n_types, r4.per_k_counts(), r4.new_counts()[1:]) == (6, [3, 2, 2, 2], [1, 1, 1])
    r5 = cached_run(5, CENTRAL)
    assert (r5.n_types, r5.per_k_counts(), r5.new_counts()[1:]) == (23, [7, 6, 6, 5, 3], [5, 5, 4, 2])
    assert sum(vertex_count_distribution(r4).values()) == 6


def test_generic_only_matches_full_run():
    for d, mode in [(3, AFFINE), (4, AFFINE), (4, CENTRAL), (5, CENTRAL)]:
        g = classify(CubeSpec(d, mode), generic_only=True)
        assert g.registry.keys() == cached_run(d, mode).generic_types()


def test_max_k_truncation():
    run = classify(CubeSpec(4, AFFINE), max_k=2)
    full = cached_run(4, AFFINE)
    assert run.per_k_counts() == full.per_k_counts()[:3]


def _top_k_oracle(d):
    """Every plane of affine rank d through cube vertices, from all d-subsets."""
    V = vertex_coords(d)
    keys = {}
    for sub in combinations(range(len(V)), d):
        K = kernel_basis(RationalMatrix([tuple(V[i]) + (1,) for i in sub]))
        if len(K) != 1:
            continue
        u = K[0]
        H = Hyperplane.from_ambient(u, AFFINE)
        if H is None:
            continue
        S = build_slice(d, H, AFFINE)
        if S is not None and S.k == d:
            keys[canonical_key(S)] = S.f_vector
    return keys


@pytest.mark.parametrize("d", [3, 4])
def test_top_k_column_against_exhaustive_oracle(d):
    run = cached_run(d, AFFINE)
    oracle = _top_k_oracle(d)
    assert set(oracle) == run.per_k_types[d]
    if d == 4:
        assert sorted(oracle.values()) == [(4, 6, 4), (6, 9, 5), (6, 12, 8), (7, 12, 7), (8, 12, 6)]


def test_small_coefficient_planes_are_registered():
    run = cached_run(4, AFFINE)
    keys = run.registry.keys()
    for w in combinations_with_replacement(range(4), 4):
        if not any(w):
            continue
        s = sum(w)
        for a2 in range(-2 * s, 2 * s + 1):
            S = build_slice(4, Hyperplane(w, Fraction(a2, 2)), AFFINE)
            if S is not None:
                assert canonical_key(S) in keys
                assert S.k in run.registry.find(S).ks


def test_euler_on_all_types():
    for d, mode in [(3, AFFINE), (4, AFFINE), (3, CENTRAL), (4, CENTRAL), (5, CENTRAL)]:
        for e in cached_run(d, mode).entries():
            assert euler_ok(e.f_vector)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_facet_count_dichotomy(d):
    spec = CubeSpec(d, CENTRAL)
    for fl in [None] + orbit_reps_flats(spec, d - 1):
        for _, _, S, _ in process_flat(spec, fl).slices:
            assert S.n_facets in (2 * d, 2 * d - 2)


@pytest.mark.parametrize("d,classes", [(3, 2), (4, 3)])
def test_generic_central_edge_criterion(d, classes):
    rep = check_generic_central_edge_criterion(d)
    assert rep.consistent
    assert rep.edge_classes == rep.type_classes == classes


def test_hexagons_share_edge_set_orbit():
    from cubeslices.classify import edge_set
    from cubeslices.cube import SignedPermutation, act, edges

    spec = CubeSpec(3, CENTRAL)
    u1 = (1, 1, 1)
    u2 = act(SignedPermutation((1, -2, -3)), (4, -2, -3))
    e1 = edge_set(spec, Hyperplane(u1, 0).labeling())
    e2 = edge_set(spec, Hyperplane(u2, 0).labeling())
    assert e1 == e2 and len(e1) == 6


@pytest.mark.parametrize("d", [3, 4, 5])
def test_intersection_conjecture(d):
    rep = check_central_intersection_conjecture(cached_run(d, CENTRAL))
    assert rep.holds
    assert rep.cube_at_every_k
    assert all(n == 1 for n in rep.pairs.values())


def test_cube_section_example():
    S = build_slice(4, cube_section_hyperplane(4, 2), CENTRAL)
    assert S.f_vector == (8, 12, 6)
    assert canonical_key(S) == cube_type_key(4)


def test_gap_report():
    assert vertex_gap_report(cached_run(3, AFFINE)).attained == [3, 4, 5, 6]
    rep = vertex_gap_report(cached_run(4, AFFINE))
    assert 4 in rep.attained and 2 not in rep.attained
    assert max(rep.attained) == 12


@pytest.mark.parametrize("d,n", [(3, 6), (4, 12), (5, 30), (6, 60)])
def test_max_vertex_construction(d, n):
    S = build_slice(d, max_vertex_construction(d))
    assert S.n_vertices == n == max_vertex_bound(d)
    assert S.k == 0


def test_graphs_distinguish_types():
    for d, mode in [(3, AFFINE), (4, AFFINE), (4, CENTRAL), (5, CENTRAL)]:
        entries = cached_run(d, mode).entries()
        graphs = {uncolored_graph_key(e.representative) for e in entries}
        assert len(graphs) == len(entries)


@pytest.mark.stretch
def test_graphs_distinguish_types_d5():
    entries = cached_run(5, AFFINE).entries()
    assert len({uncolored_graph_key(e.representative) for e in entries}) == len(entries)


def test_labeling_orbit_key_symmetry():
    spec = CubeSpec(3, AFFINE)
    U = [(1, 2, 3, 1), (-3, 2, -1, 1), (-1, -2, -3, -1), (1, 2, 3, 2)]
    k = labeling_orbit_keys(spec, U)
    assert k[0] == k[1] == k[2]
    assert k[0] != k[3]


def test_workers_give_identical_registry():
    a = classify(CubeSpec(4, AFFINE), workers=1)
    b = classify(CubeSpec(4, AFFINE), workers=2)
    assert [e.key for e in a.entries()] == [e.key for e in b.entries()]
    assert [e.witnesses for e in a.entries()] == [e.witnesses for e in b.entries()]
    assert a.per_k_types == b.per_k_types


@pytest.mark.parametrize("d,mode", [(3, AFFINE), (4, AFFINE), (4, CENTRAL)])
def test_labeling_dedup_loses_nothing(d, mode):
    from cubeslices.arrangement import cell_witnesses, chamber_witnesses, master_arrangement
    from cubeslices.classify import hyperplane_of

    spec = CubeSpec(d, mode)
    per_k: dict = {}
    for fl in [None] + orbit_reps_flats(spec, spec.ambient - 1):
        if fl is None:
            arr = master_arrangement(spec)
            _, U = chamber_witnesses(arr.normals, arr.ambient_dim)
        else:
            _, _, U = cell_witnesses(spec, fl)
        for u in U:
            H = hyperplane_of(spec, u)
            S = None if H is None else build_slice(d, H, mode)
            if S is not None:
                per_k.setdefault(S.k, set()).add(canonical_key(S))
    assert per_k == cached_run(d, mode).per_k_types
