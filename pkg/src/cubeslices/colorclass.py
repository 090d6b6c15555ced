"""Color classes: slice graphs with white (cube vertex) and black
(edge crossing) vertices, up to color-preserving isomorphism.

Realizable {+, 0, -} labelings of the cube are generated from connected
+ sides S with |S| <= 2^(d-1): S is grown one neighbour at a time up to
B_d symmetry, the 0 labels are drawn from the neighbourhood N(S), the
combinatorial conditions prune, and the exact cone test decides.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combtype import canonical_form
from .cube import AFFINE, CubeSpec, canonical_set, group_table, orbit_reps_flats, squares, vertex_coords
from .lp import ConstraintSystem, strict_feasible
from .slices import Hyperplane, Slice, build_slice

PLUS, ZERO, MINUS = 1, 0, -1


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: tuple  # sorted (i, j) pairs with i < j
    white: tuple  # bool per vertex

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    def color_string(self) -> str:
        return "".join("1" if w else "0" for w in self.white)


def colored_graph(S: Slice) -> ColoredGraph:
    return ColoredGraph(S.n_vertices, tuple(S.graph_edges()), S.is_cube_vertex)


def colored_canonical_key(G: ColoredGraph) -> bytes:
    return canonical_form(G.n, G.edges, [1 if w else 0 for w in G.white])


def _dihedral(pattern: Sequence[int]) -> set[tuple]:
    p = tuple(pattern)
    out = set()
    for r in range(4):
        q = p[r:] + p[:r]
        out.add(q)
        out.add(q[::-1])
    return out


_BASE_PATTERNS = [
    (PLUS, ZERO, PLUS, ZERO),
    (ZERO, ZERO, ZERO, PLUS),
    (MINUS, PLUS, MINUS, PLUS),
    (MINUS, ZERO, MINUS, ZERO),
    (ZERO, ZERO, ZERO, MINUS),
]
FORBIDDEN = frozenset(q for p in _BASE_PATTERNS for q in _dihedral(p))


def forbidden_square_filter(labels: Sequence[int], sq: Sequence[Sequence[int]]) -> bool:
    """True (pass) iff no 4-cycle carries a forbidden pattern."""
    for a, b, c, e in sq:
        if (labels[a], labels[b], labels[c], labels[e]) in FORBIDDEN:
            return False
    return True


def realizable(labels: Sequence[int], spec: CubeSpec | int) -> Hyperplane | None:
    """Witness hyperplane for a labeling, or None.

    Unknowns are (w, a) with l(v) = sgn(<v, w> + a); the returned plane is
    {x : <w, x> = -a}.
    """
    d = spec.d if isinstance(spec, CubeSpec) else spec
    eqs, strict = [], []
    for v, lab in zip(vertex_coords(d), labels):
        row = tuple(v) + (1,)
        if lab == ZERO:
            eqs.append(row)
        else:
            strict.append(tuple(lab * x for x in row))
    res = strict_feasible(ConstraintSystem(d + 1, tuple(eqs), tuple(strict)))
    if not res:
        return None
    return Hyperplane.from_ambient(res.witness, AFFINE)


def _adjacency(d: int) -> list[int]:
    return [sum(1 << (v ^ (1 << j)) for j in range(d)) for v in range(1 << d)]


def _connected(mask: int, adj: list[int]) -> bool:
    if mask == 0:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(verts) -> int:
    m = 0
    for v in verts:
        m |= 1 << v
    return m


def _is_threshold(d: int, plus: int) -> bool:
    n = 1 << d
    labels = [PLUS if (plus >> v) & 1 else MINUS for v in range(n)]
    return realizable(labels, d) is not None


def connected_plus_sides(d: int, prune_threshold: bool = True) -> list[int]:
    """Orbit representatives of connected vertex sets S, 1 <= |S| <= 2^(d-1).

    With ``prune_threshold`` only sets cut off by some hyperplane are kept;
    every realizable + side is one, and each such set loses its lowest
    vertex to another one, so growth reaches all of them.
    """
    adj = _adjacency(d)
    half = 1 << (d - 1)
    level = {canonical_set(d, [0])}
    out: list[int] = []
    size = 1
    while level:
        cur = sorted(level)
        out.extend(_mask(t) for t in cur)
        if size == half:
            break
        nxt = set()
        for t in cur:
            m = _mask(t)
            nb = 0
            for v in t:
                nb |= adj[v]
            nb &= ~m
            for v in _members(nb):
                key = canonical_set(d, t + (v,))
                if key in nxt:
                    continue
                if prune_threshold and not _is_threshold(d, _mask(key)):
                    continue
                nxt.add(key)
        level = nxt
        size += 1
    return out


@lru_cache(maxsize=None)
def flat_masks(d: int) -> np.ndarray:
    """Bitmasks of every flat of rank 1..d of the affine cube.

    A realizable zero set is the set of cube vertices on a hyperplane,
    hence one of these (or empty).
    """
    if d > 6:
        raise ValueError("flat masks are only tabulated for d <= 6")
    spec = CubeSpec(d, AFFINE)
    G = group_table(d).astype(np.uint64)
    one = np.uint64(1)
    out = set()
    for fl in orbit_reps_flats(spec, d):
        imgs = G[:, list(fl.vertices)]
        masks = np.bitwise_or.reduce(np.left_shift(one, imgs), axis=1)
        out.update(int(m) for m in np.unique(masks))
    return np.array(sorted(out), dtype=np.uint64)


@dataclass
class ColorClass:
    key: bytes
    graph: ColoredGraph
    representative: Slice
    labeling: tuple


@dataclass
class ColorStats:
    plus_sides: int = 0
    candidates: int = 0
    square_rejects: int = 0
    lp_calls: int = 0
    lp_rejects: int = 0


def _labels(n: int, plus: int, zero: int) -> list[int]:
    return [PLUS if (plus >> v) & 1 else ZERO if (zero >> v) & 1 else MINUS for v in range(n)]


def _record(out: dict, d: int, labels: list[int], H: Hyperplane) -> None:
    S = build_slice(d, H, AFFINE)
    if S is None:
        return
    G = colored_graph(S)
    key = colored_canonical_key(G)
    if key not in out:
        out[key] = ColorClass(key, G, S, tuple(labels))


def enumerate_color_classes(
    d: int,
    square_filter: bool = True,
    prune_threshold: bool = True,
    stats: ColorStats | None = None,
) -> dict[bytes, ColorClass]:
    """All color classes of slices of C_d, keyed canonically."""
    n = 1 << d
    full = (1 << n) - 1
    adj = _adjacency(d)
    sq = squares(d)
    flats = flat_masks(d)
    stats = stats if stats is not None else ColorStats()
    out: dict[bytes, ColorClass] = {}
    # supporting hyperplanes through a facet: no + side at all
    for j in range(d):
        zero = _mask(v for v in range(n) if (v >> j) & 1)
        labels = _labels(n, 0, zero)
        H = realizable(labels, d)
        if H is not None:
            _record(out, d, labels, H)
    for plus in connected_plus_sides(d, prune_threshold):
        stats.plus_sides += 1
        nb = 0
        for v in _members(plus):
            nb |= adj[v]
        nb &= ~plus
        inside = flats[(flats & np.uint64(full ^ nb)) == 0]
        for zero in [0] + [int(z) for z in inside]:
            minus = full & ~(plus | zero)
            if not _connected(minus, adj):
                continue
            stats.candidates += 1
            labels = _labels(n, plus, zero)
            if square_filter and not forbidden_square_filter(labels, sq):
                stats.square_rejects += 1
                continue
            stats.lp_calls += 1
            H = realizable(labels, d)
            if H is None:
                stats.lp_rejects += 1
                continue
            _record(out, d, labels, H)
    return dict(sorted(out.items(), key=lambda kv: (kv[1].graph.n, kv[0])))


def color_classes_from_cells(d: int) -> dict[bytes, ColorClass]:
    """Same classes, read off one cell per labeling orbit of the arrangement."""
    from .classify import process_flat

    spec = CubeSpec(d, AFFINE)
    out: dict[bytes, ColorClass] = {}
    for fl in [None] + orbit_reps_flats(spec, d):
        for _, _, S, _ in process_flat(spec, fl).slices:
            G = colored_graph(S)
            key = colored_canonical_key(G)
            if key not in out:
                out[key] = ColorClass(key, G, S, S.hyperplane.labeling())
    return dict(sorted(out.items(), key=lambda kv: (kv[1].graph.n, kv[0])))


def unrealizable_labeling() -> tuple[int, ...]:
    """A C_3 labeling meeting the combinatorial conditions yet unrealizable.

    Zeros at (1,1,-1), (-1,-1,1), (-1,1,1); + at (-1,-1,-1), (-1,1,-1).
    The zeros span the plane x_1 + x_3 = 0, which also holds (1,-1,-1).
    """
    coords = vertex_coords(3)
    zero = {(1, 1, -1), (-1, -1, 1), (-1, 1, 1)}
    plus = {(-1, -1, -1), (-1, 1, -1)}
    return tuple(ZERO if v in zero else PLUS if v in plus else MINUS for v in coords)


def combinatorial_conditions(labels: Sequence[int], d: int) -> dict[str, bool]:
    adj = _adjacency(d)
    n = 1 << d
    plus = _mask(v for v in range(n) if labels[v] == PLUS)
    minus = _mask(v for v in range(n) if labels[v] == MINUS)
    zero = _mask(v for v in range(n) if labels[v] == ZERO)
    nb = 0
    for v in _members(plus):
        nb |= adj[v]
    return {
        "connected": _connected(plus, adj) and _connected(minus, adj),
        "zeros_touch_plus": plus == 0 or zero & ~nb == 0,
        "no_forbidden_square": forbidden_square_filter(labels, squares(d)),
    }
