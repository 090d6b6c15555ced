"""Classification runs: cells of the master arrangement and its flats,
slices, registry, per-k breakdowns and the theorem/conjecture checks.

Cells whose vertex labelings lie in one B_d orbit (up to the global sign
u -> -u) give congruent slices, so only the first cell of each labeling
orbit is turned into a slice. The orbit key is the labeling of the sorted
absolute normal, see :func:`labeling_orbit_keys`.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .arrangement import cell_witnesses, chamber_witnesses, master_arrangement
from .combtype import TypeRegistry, canonical_key
from .cube import AFFINE, CENTRAL, CubeSpec, Flat, canonical_set, edges, orbit_reps_flats, vertex_coords
from .slices import Hyperplane, Slice, build_slice


def labeling_orbit_keys(spec: CubeSpec, U: Sequence[Sequence[int]]) -> list[bytes | None]:
    """Key identifying the B_d x {+-1} orbit of each witness's labeling.

    A signed permutation can make the normal part nonnegative and sorted;
    the labeling of that image is the key (for affine witnesses the global
    sign flips the height, so the smaller of both labelings is taken).
    Within an open cell the image's cell does not depend on the chosen
    point: wherever the sorting changes, the responsible transposition or
    sign flip fixes a point of the cell and hence the cell itself.
    Witnesses whose normal part vanishes get None.
    """
    d = spec.d
    if not len(U):
        return []
    A = np.array(U, dtype=object)
    big = max(abs(int(x)) for x in A.flat) * (d + 1) >= (1 << 62)
    A = A if big else A.astype(np.int64)
    W = -np.sort(-np.abs(A[:, :d]), axis=1)
    V = np.array(vertex_coords(d), dtype=A.dtype)
    P = W @ V.T
    if spec.mode == AFFINE:
        h = A[:, d][:, None]
        L1, L2 = np.sign(P + h), np.sign(P - h)
    else:
        L1 = L2 = np.sign(P)
    L1 = (L1 + 1).astype(np.uint8)
    L2 = (L2 + 1).astype(np.uint8)
    zero = ~W.astype(bool).any(axis=1)
    out: list[bytes | None] = []
    for i in range(len(U)):
        if zero[i]:
            out.append(None)
            continue
        a, b = L1[i].tobytes(), L2[i].tobytes()
        out.append(a if a <= b else b)
    return out


def hyperplane_of(spec: CubeSpec, u: Sequence) -> Hyperplane | None:
    return Hyperplane.from_ambient(u, spec.mode)


@dataclass
class CellResult:
    flat: Flat | None
    n_cells: int
    slices: list  # (orbit key, witness, Slice, canonical key)


def process_flat(spec: CubeSpec, flat: Flat | None) -> CellResult:
    """Slices of one representative cell per labeling orbit on a flat."""
    if flat is None:
        arr = master_arrangement(spec)
        _, U = chamber_witnesses(arr.normals, arr.ambient_dim)
    else:
        _, _, U = cell_witnesses(spec, flat)
    keys = labeling_orbit_keys(spec, U)
    seen: set[bytes] = set()
    out = []
    for okey, u in zip(keys, U):
        if okey is None or okey in seen:
            continue
        seen.add(okey)
        H = hyperplane_of(spec, u)
        S = build_slice(spec.d, H, spec.mode)
        if S is None:
            continue
        out.append((okey, tuple(u), S, canonical_key(S)))
    return CellResult(flat, len(U), out)


def _process_star(args):
    return process_flat(*args)


@dataclass
class ClassificationRun:
    spec: CubeSpec
    generic_only: bool
    max_k: int
    registry: TypeRegistry = field(default_factory=TypeRegistry)
    per_k_types: dict = field(default_factory=dict)
    cell_counts: list = field(default_factory=list)  # (flat, number of cells)

    @property
    def per_k_new(self) -> dict[int, int]:
        out = {}
        before: set = set()
        for k in sorted(self.per_k_types):
            cur = self.per_k_types[k]
            out[k] = len(cur - before)
            before |= cur
        return out

    def per_k_counts(self) -> list[int]:
        top = max(self.per_k_types, default=-1)
        return [len(self.per_k_types.get(k, ())) for k in range(top + 1)]

    def new_counts(self) -> list[int]:
        new = self.per_k_new
        return [new.get(k, 0) for k in range(max(self.per_k_types, default=-1) + 1)]

    @property
    def n_types(self) -> int:
        return len(self.registry)

    def generic_types(self) -> set[bytes]:
        return set(self.per_k_types.get(0, ()))

    def entries(self):
        return self.registry.entries()


def classify(spec: CubeSpec, generic_only: bool = False, max_k: int | None = None, workers: int = 1) -> ClassificationRun:
    top = spec.ambient - 1
    max_k = top if max_k is None else min(max_k, top)
    flats: list[Flat | None] = [None]
    if not generic_only and max_k >= 1:
        flats += orbit_reps_flats(spec, max_k)
    tasks = [(spec, f) for f in flats]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_process_star, tasks, chunksize=1))
    else:
        results = [_process_star(t) for t in tasks]
    run = ClassificationRun(spec, generic_only, 0 if generic_only else max_k)
    for res in results:
        run.cell_counts.append((res.flat, res.n_cells))
        for _, u, S, key in res.slices:
            if S.k > run.max_k and not generic_only:
                continue
            run.registry.insert(S, key, witness=u, central=S.hyperplane.is_central)
            run.per_k_types.setdefault(S.k, set()).add(key)
    return run


def merge_central(affine_run: ClassificationRun, central_run: ClassificationRun) -> None:
    """Flag affine types that also occur as central slices."""
    ckeys = central_run.registry.keys()
    for e in affine_run.registry.entries():
        if e.key in ckeys:
            e.central = True


def vertex_count_distribution(run: ClassificationRun, generic: bool = False) -> dict[int, int]:
    hist: dict[int, int] = {}
    keep = run.generic_types() if generic else None
    for e in run.entries():
        if keep is not None and e.key not in keep:
            continue
        hist[e.n_vertices] = hist.get(e.n_vertices, 0) + 1
    return dict(sorted(hist.items()))


def max_vertex_bound(d: int) -> int:
    h = (d + 1) // 2
    return h * comb(d, h)


def max_vertex_construction(d: int) -> Hyperplane:
    if d < 2:
        raise ValueError("d must be >= 2")
    w = (1,) * d if d % 2 else (1,) * (d - 1) + (0,)
    return Hyperplane(w, 0)


def cube_section_hyperplane(d: int, k: int) -> Hyperplane:
    """Central hyperplane through k independent vertices cutting out C_{d-1}."""
    if k == 0:
        return Hyperplane((1,) + (0,) * (d - 1), 0)
    if not 1 <= k <= d - 1:
        raise ValueError("k must be in 0..d-1")
    return Hyperplane((-(d - k),) + (1,) * (d - k) + (0,) * (k - 1), 0)


def cube_type_key(d: int) -> bytes:
    """Key of the (d-1)-cube, as the slice x_1 = 0."""
    return canonical_key(build_slice(d, cube_section_hyperplane(d, 0), CENTRAL))


@dataclass
class ConjectureReport:
    d: int
    pairs: dict  # (k1, k2) -> number of common types
    holds: bool
    cube_sections: dict  # k -> (slice k, is cube type)

    @property
    def cube_at_every_k(self) -> bool:
        return all(ok and kk == k for k, (kk, ok) in self.cube_sections.items())


def check_central_intersection_conjecture(run: ClassificationRun) -> ConjectureReport:
    d = run.spec.d
    cube = cube_type_key(d)
    ks = sorted(run.per_k_types)
    pairs = {}
    holds = True
    for i, k1 in enumerate(ks):
        for k2 in ks[i + 1 :]:
            common = run.per_k_types[k1] & run.per_k_types[k2]
            pairs[(k1, k2)] = len(common)
            if common != {cube}:
                holds = False
    prop = {}
    for k in range(d):
        S = build_slice(d, cube_section_hyperplane(d, k), CENTRAL)
        prop[k] = (S.k, canonical_key(S) == cube)
    return ConjectureReport(d, pairs, holds, prop)


def edge_set(spec: CubeSpec, labeling: Sequence[int]) -> tuple[int, ...]:
    """Indices of cube edges whose endpoints are strictly separated."""
    return tuple(
        i for i, (a, b) in enumerate(edges(spec.d)) if labeling[a] * labeling[b] < 0
    )


def _edge_perm_table(d: int) -> np.ndarray:
    from .cube import group_table

    E = edges(d)
    index = {e: i for i, e in enumerate(E)}
    G = group_table(d).astype(np.int64)
    out = np.empty((len(G), len(E)), dtype=np.int64)
    for j, (a, b) in enumerate(E):
        ga, gb = G[:, a], G[:, b]
        lo, hi = np.minimum(ga, gb), np.maximum(ga, gb)
        out[:, j] = [index[(int(x), int(y))] for x, y in zip(lo, hi)]
    return out


@dataclass
class EdgeCriterionReport:
    d: int
    edge_classes: int
    type_classes: int
    consistent: bool


def check_generic_central_edge_criterion(d: int) -> EdgeCriterionReport:
    """Group generic central chambers by orbit of cut edge sets and by type."""
    spec = CubeSpec(d, CENTRAL)
    arr = master_arrangement(spec)
    _, U = chamber_witnesses(arr.normals, arr.ambient_dim)
    table = _edge_perm_table(d)
    edge_key_of: list = []
    type_key_of: list = []
    cache: dict = {}
    for u in U:
        H = Hyperplane(u, 0)
        lab = H.labeling()
        es = edge_set(spec, lab)
        imgs = np.sort(table[:, list(es)], axis=1)
        order = np.lexsort(imgs.T[::-1])
        ek = tuple(int(x) for x in imgs[order[0]])
        edge_key_of.append(ek)
        if ek not in cache:
            cache[ek] = canonical_key(build_slice(d, H, CENTRAL))
        type_key_of.append(cache[ek])
    # the partition by edge orbit must equal the partition by type
    by_type: dict = {}
    consistent = True
    for ek, tk in zip(edge_key_of, type_key_of):
        prev = by_type.setdefault(tk, ek)
        if prev != ek:
            consistent = False
    # confirm the cached key per edge orbit is constant over the orbit
    for u, ek in list(zip(U, edge_key_of))[:: max(1, len(U) // 200)]:
        if canonical_key(build_slice(d, Hyperplane(u, 0), CENTRAL)) != cache[ek]:
            consistent = False
    return EdgeCriterionReport(d, len(set(edge_key_of)), len(set(type_key_of)), consistent)


@dataclass
class GapReport:
    d: int
    attained: list
    missing: list
    predicate: bool  # the power-of-two gap statement, evaluated literally
    rows: list  # (vertex count, attained)


def vertex_gap_report(run: ClassificationRun) -> GapReport:
    d = run.spec.d
    hist = vertex_count_distribution(run)
    top = max(hist)
    rows = [(n, n in hist) for n in range(d, top + 1)]
    forbidden = [2**i for i in range(0, 64) if 2**i <= 2 * d - 3]
    predicate = not any(n in hist for n in forbidden)
    return GapReport(d, sorted(hist), [n for n, ok in rows if not ok], predicate, rows)


def uncolored_graph_key(S: Slice) -> bytes:
    from .combtype import canonical_form

    return canonical_form(S.n_vertices, S.graph_edges(), [0] * S.n_vertices)
