"""Canonical forms of small colored graphs and the registry of types.

The canonicalizer is individualization/refinement: colors are refined by
neighbourhood signatures until stable, then the search branches on every
vertex of the first smallest non-singleton cell. A leaf is a discrete
coloring, i.e. an ordering of the vertices; its certificate is the sorted
edge list in that ordering. The least certificate over the search tree is
the canonical form. Leaves with equal certificates yield automorphisms,
which prune sibling branches lying in the same orbit.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .slices import Slice


def _refine(colors: list[int], adj: list[list[int]]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == ncolors:
            return new
        colors, ncolors = new, len(rank)


def _target_cell(colors: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _individualize(colors: list[int], v: int) -> list[int]:
    return [2 * c if u == v else 2 * c + 1 for u, c in enumerate(colors)]


class _Search:
    def __init__(self, adj: list[list[int]], edge_list: list[tuple[int, int]]):
        self.adj = adj
        self.edges = edge_list
        self.best: tuple | None = None
        self.best_perm: list[int] | None = None
        self.autos: list[list[int]] = []

    def certificate(self, perm: list[int]) -> tuple:
        return tuple(sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in self.edges))

    def leaf(self, colors: list[int]) -> None:
        cert = self.certificate(colors)
        if self.best is None or cert < self.best:
            self.best, self.best_perm = cert, colors
        elif cert == self.best:
            inv = [0] * len(colors)
            for v, p in enumerate(self.best_perm):
                inv[p] = v
            self.autos.append([inv[colors[v]] for v in range(len(colors))])

    def orbit_root(self, fixed: Sequence[int], cell: list[int]):
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if any(g[v] != v for v in fixed):
                continue
            for v in cell:
                gv = g[v]
                if gv in parent:
                    a, b = find(v), find(gv)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def run(self, colors: list[int], path: tuple = ()) -> None:
        cell = _target_cell(colors)
        if cell is None:
            self.leaf(colors)
            return
        explored_roots: set[int] = set()
        for v in cell:
            if explored_roots:
                find = self.orbit_root(path, cell)
                if find(v) in {find(u) for u in explored_roots}:
                    continue
            self.run(_refine(_individualize(colors, v), self.adj), path + (v,))
            explored_roots.add(v)


def canonical_form(n: int, edge_list: Iterable[tuple[int, int]], colors: Sequence[int]) -> bytes:
    """Canonical byte string of a vertex-colored simple graph.

    Colors are compared as integers; two graphs get equal forms iff they
    are isomorphic by a color-preserving map.
    """
    edge_list = sorted({(min(a, b), max(a, b)) for a, b in edge_list})
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edge_list:
        adj[a].append(b)
        adj[b].append(a)
    base = sorted(set(colors))
    start = _refine([base.index(c) for c in colors], adj)
    search = _Search(adj, edge_list)
    search.run(start)
    perm = search.best_perm or []
    by_pos = [0] * n
    for v, p in enumerate(perm):
        by_pos[p] = colors[v]
    payload = array("H", [n, len(edge_list)])
    payload.extend(int(c) for c in by_pos)
    for a, b in search.best or ():
        payload.extend((a, b))
    return payload.tobytes() if n else b""


def incidence_graph(S: Slice) -> tuple[int, list[tuple[int, int]], list[int]]:
    """Vertex-facet bipartite graph; vertices colored 0, facets 1."""
    nv, nf = S.n_vertices, S.n_facets
    edge_list = [
        (i, nv + f) for i, inc in enumerate(S.incidence) for f in range(nf) if (inc >> f) & 1
    ]
    return nv + nf, edge_list, [0] * nv + [1] * nf


def incidence_key(incidence: Sequence[int], n_facets: int) -> bytes:
    nv = len(incidence)
    edge_list = [(i, nv + f) for i, inc in enumerate(incidence) for f in range(n_facets) if (inc >> f) & 1]
    return canonical_form(nv + n_facets, edge_list, [0] * nv + [1] * n_facets)


def canonical_key(S: Slice) -> bytes:
    return incidence_key(S.incidence, S.n_facets)


def key_hex(key: bytes) -> str:
    return key.hex()


@dataclass
class TypeEntry:
    key: bytes
    f_vector: tuple
    representative: Slice
    min_k: int
    ks: set = field(default_factory=set)
    witnesses: list = field(default_factory=list)  # (k, witness) pairs
    central: bool = False

    @property
    def n_vertices(self) -> int:
        return self.f_vector[0]

    def witness_for(self, k: int | None = None):
        for kk, w in self.witnesses:
            if k is None or kk == k:
                return w
        return None


class TypeRegistry:
    """Types bucketed by f-vector; keys are compared only within a bucket."""

    def __init__(self):
        self.buckets: dict[tuple, dict[bytes, TypeEntry]] = {}

    def insert(self, S: Slice, key: bytes | None = None, witness=None, central: bool | None = None) -> bool:
        fv = S.f_vector
        bucket = self.buckets.setdefault(fv, {})
        if key is None:
            key = canonical_key(S)
        if central is None:
            central = S.hyperplane.is_central
        entry = bucket.get(key)
        if entry is None:
            entry = TypeEntry(key, fv, S, S.k, {S.k}, [], central)
            if witness is not None:
                entry.witnesses.append((S.k, witness))
            bucket[key] = entry
            return True
        entry.ks.add(S.k)
        if S.k < entry.min_k:
            entry.min_k = S.k
        entry.central = entry.central or central
        if witness is not None:
            entry.witnesses.append((S.k, witness))
        return False

    def merge(self, other: "TypeRegistry") -> None:
        for fv, bucket in other.buckets.items():
            mine = self.buckets.setdefault(fv, {})
            for key, e in bucket.items():
                if key not in mine:
                    mine[key] = e
                else:
                    m = mine[key]
                    m.ks |= e.ks
                    m.min_k = min(m.min_k, e.min_k)
                    m.central = m.central or e.central
                    m.witnesses.extend(e.witnesses)

    def entries(self) -> list[TypeEntry]:
        return [self.buckets[fv][k] for fv in sorted(self.buckets) for k in sorted(self.buckets[fv])]

    def keys(self) -> set[bytes]:
        return {k for b in self.buckets.values() for k in b}

    def find(self, S: Slice) -> TypeEntry | None:
        return self.buckets.get(S.f_vector, {}).get(canonical_key(S))

    def __len__(self):
        return sum(len(b) for b in self.buckets.values())

    def __contains__(self, key: bytes):
        return any(key in b for b in self.buckets.values())


def registry_insert(R: TypeRegistry, S: Slice, meta: dict | None = None) -> str:
    meta = meta or {}
    return "inserted" if R.insert(S, **meta) else "duplicate"
