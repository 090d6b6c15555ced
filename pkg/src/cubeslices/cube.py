"""The cube [-1, 1]^d, its symmetry group B_d and restriction to flats.

Vertex ``i`` has coordinate ``j`` equal to +1 iff bit ``j`` of ``i`` is set,
so index 0 is (-1, ..., -1) and index 1 is (1, -1, ..., -1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Sequence

import numpy as np

from .linalg import (
    RationalMatrix,
    int_rank,
    orthogonal_complement,
    sign_normalized,
    vector,
)

AFFINE = "affine"
CENTRAL = "central"


class ZeroColumn(ValueError):
    pass


class InconsistentChain(ValueError):
    pass


@dataclass(frozen=True)
class CubeSpec:
    d: int
    mode: str = AFFINE

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.mode not in (AFFINE, CENTRAL):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def ambient(self) -> int:
        return self.d + 1 if self.mode == AFFINE else self.d

    @property
    def n_vertices(self) -> int:
        return 1 << self.d


@lru_cache(maxsize=None)
def vertex_coords(d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(1 if (i >> j) & 1 else -1 for j in range(d)) for i in range(1 << d)
    )


def embedded_vertices(spec: CubeSpec) -> tuple[tuple[int, ...], ...]:
    """Vertex vectors in the ambient space of the mode (integers)."""
    vs = vertex_coords(spec.d)
    if spec.mode == AFFINE:
        return tuple(v + (1,) for v in vs)
    return vs


def vertices(spec: CubeSpec) -> RationalMatrix:
    return RationalMatrix.from_columns(embedded_vertices(spec))


def edges(spec_or_d) -> list[tuple[int, int]]:
    d = spec_or_d.d if isinstance(spec_or_d, CubeSpec) else spec_or_d
    return [
        (i, i | (1 << j))
        for i in range(1 << d)
        for j in range(d)
        if not (i >> j) & 1
    ]


def facets(spec_or_d) -> list[tuple[int, int]]:
    """(coordinate, sign) pairs; coordinates are 0-based."""
    d = spec_or_d.d if isinstance(spec_or_d, CubeSpec) else spec_or_d
    return [(j, s) for j in range(d) for s in (1, -1)]


def facet_label(f: tuple[int, int]) -> str:
    j, s = f
    return f"{'+' if s > 0 else '-'}{j + 1}"


def squares(d: int) -> list[tuple[int, int, int, int]]:
    """All 4-cycles of the cube graph, in cyclic order."""
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            bi, bj = 1 << i, 1 << j
            for base in range(1 << d):
                if base & (bi | bj):
                    continue
                out.append((base, base | bi, base | bi | bj, base | bj))
    return out


def neighbors(d: int, v: int) -> list[int]:
    return [v ^ (1 << j) for j in range(d)]


@dataclass(frozen=True)
class SignedPermutation:
    """images[i] = pi(i+1) in {+-1..+-d}."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(abs(x) for x in imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError("not a signed permutation")
        object.__setattr__(self, "images", imgs)

    @property
    def d(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> "SignedPermutation":
        return cls(tuple(range(1, d + 1)))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """(self o other)(i) = self(other(i)) with self(-i) = -self(i)."""
        out = []
        for x in other.images:
            y = self.images[abs(x) - 1]
            out.append(y if x > 0 else -y)
        return SignedPermutation(tuple(out))

    def vertex_map(self) -> list[int]:
        """Index table of the induced permutation of cube vertices."""
        coords = vertex_coords(self.d)
        index = {c: i for i, c in enumerate(coords)}
        return [index[act(self, c)] for c in coords]


def act(pi: SignedPermutation, v: Sequence):
    """pi(v) = (v_pi(1), ..., v_pi(d)) with v_{-i} = -v_i.

    A vector of length d+1 is treated as affine; its height is fixed.
    """
    d = pi.d
    if len(v) not in (d, d + 1):
        raise ValueError("vector length must be d or d+1")
    out = []
    for x in pi.images:
        c = v[abs(x) - 1]
        out.append(c if x > 0 else -c)
    if len(v) == d + 1:
        out.append(v[d])
    return tuple(out)


def group_elements(d: int):
    for perm in permutations(range(1, d + 1)):
        for signs in product((1, -1), repeat=d):
            yield SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))


@lru_cache(maxsize=None)
def group_table(d: int) -> np.ndarray:
    """Row g lists the image index of every vertex under the g-th element.

    Computed with bit arithmetic: vertex bit j of the image is bit |pi(j)|-1
    of the source, complemented when pi(j) is negative.
    """
    n = 1 << d
    idx = np.arange(n, dtype=np.int64)
    bits = [(idx >> j) & 1 for j in range(d)]
    rows = []
    for perm in permutations(range(d)):
        src = [bits[p] for p in perm]
        for flip in range(n):
            img = np.zeros(n, dtype=np.int64)
            for j in range(d):
                b = src[j] ^ ((flip >> j) & 1)
                img |= b << j
            rows.append(img)
    dtype = np.uint8 if n <= 256 else np.uint16
    return np.asarray(rows, dtype=dtype)


def group_order(d: int) -> int:
    return len(group_table(d))


def canonical_set(d: int, verts: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least sorted image of a vertex set under B_d."""
    verts = list(verts)
    if not verts:
        return ()
    imgs = np.sort(group_table(d)[:, verts].astype(np.int64), axis=1)
    order = np.lexsort(imgs.T[::-1])
    return tuple(int(x) for x in imgs[order[0]])


@dataclass(frozen=True)
class VertexTuple:
    vertices: tuple[int, ...]
    span_dim: int


def _span_rank(spec: CubeSpec, verts: Sequence[int]) -> int:
    emb = embedded_vertices(spec)
    return int_rank(emb[v] for v in verts)


def orbit_reps_vertex_tuples(spec: CubeSpec, max_size: int) -> list[VertexTuple]:
    """One canonical representative per orbit of independent vertex sets."""
    if max_size > spec.ambient:
        raise ValueError("max_size exceeds ambient dimension")
    n = spec.n_vertices
    reps: list[VertexTuple] = []
    level = {canonical_set(spec.d, [0])} if max_size >= 1 else set()
    size = 1
    while level and size <= max_size:
        cur = sorted(level)
        reps.extend(VertexTuple(t, size) for t in cur)
        if size == max_size:
            break
        nxt = set()
        for t in cur:
            for v in range(n):
                if v in t:
                    continue
                cand = t + (v,)
                if _span_rank(spec, cand) == size + 1:
                    nxt.add(canonical_set(spec.d, cand))
        level = nxt
        size += 1
    return reps


@dataclass(frozen=True)
class Flat:
    """A flat of the master arrangement: all vertices in the span of a basis."""

    basis: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def flat_closure(spec: CubeSpec, basis: Sequence[int]) -> tuple[int, ...]:
    emb = embedded_vertices(spec)
    normals = orthogonal_complement([emb[b] for b in basis], spec.ambient)
    ints = [sign_normalized(nv) for nv in normals]
    return tuple(
        i for i, v in enumerate(emb) if all(sum(a * b for a, b in zip(nv, v)) == 0 for nv in ints)
    )


def orbit_reps_flats(spec: CubeSpec, max_rank: int) -> list[Flat]:
    """One representative per B_d orbit of flats spanned by cube vertices.

    Flats are grown rank by rank: each flat is closed (it holds every cube
    vertex of its span) and its basis is extended by one outside vertex.
    """
    max_rank = min(max_rank, spec.ambient)
    out: list[Flat] = []
    level: dict[tuple[int, ...], tuple[int, ...]] = {}
    if max_rank >= 1:
        clo = flat_closure(spec, (0,))
        level[canonical_set(spec.d, clo)] = (0,)
    r = 1
    while level and r <= max_rank:
        flats = []
        for key in sorted(level):
            basis = level[key]
            verts = flat_closure(spec, basis)
            flats.append(Flat(basis, verts))
        out.extend(flats)
        if r == max_rank:
            break
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for fl in flats:
            inside = set(fl.vertices)
            for v in range(spec.n_vertices):
                if v in inside:
                    continue
                basis = fl.basis + (v,)
                clo = flat_closure(spec, basis)
                key = canonical_set(spec.d, clo)
                if key not in nxt:
                    nxt[key] = basis
        level = nxt
        r += 1
    return out


@dataclass(frozen=True)
class RestrictionStep:
    label: int
    pivot: int
    column: tuple  # the restricted vertex column before this step


@dataclass(frozen=True)
class RestrictionChain:
    steps: tuple = ()

    def extend(self, step: RestrictionStep) -> "RestrictionChain":
        return RestrictionChain(self.steps + (step,))


def restrict(A: RationalMatrix, col: int) -> tuple[RationalMatrix, int]:
    """Restrict the columns of A to the hyperplane orthogonal to column col.

    (A|v)_{i,j} = A_{i,j} - v_i A_{k,j} / v_k with k the first nonzero row
    of v; row k and column col are removed.
    """
    v = A.column(col)
    k = next((i for i, x in enumerate(v) if x != 0), None)
    if k is None:
        raise ZeroColumn(f"column {col} is zero")
    vk = v[k]
    rows = []
    for i in range(A.nrows):
        if i == k:
            continue
        ratio = v[i] / vk
        rows.append(
            [A[i, j] - ratio * A[k, j] for j in range(A.ncols) if j != col]
        )
    return RationalMatrix(rows, A.ncols - 1), k


def restrict_tuple(
    A: RationalMatrix, cols: Sequence[int]
) -> tuple[RationalMatrix, RestrictionChain, list[int]]:
    """Restrict by several columns in order.

    Returns the restricted matrix, the chain, and the original column index
    of every remaining column.
    """
    labels = list(range(A.ncols))
    chain = RestrictionChain()
    for c in cols:
        pos = labels.index(c)
        column = A.column(pos)
        A, k = restrict(A, pos)
        chain = chain.extend(RestrictionStep(c, k, column))
        labels.pop(pos)
    return A, chain, labels


def lift(p: Sequence, chain: RestrictionChain, originals: Sequence[Sequence] | None = None):
    """Undo a restriction chain, inserting pivot coordinates in reverse order."""
    x = list(vector(p)) if len(p) else []
    for step in reversed(chain.steps):
        col, k = step.column, step.pivot
        if col[k] == 0:
            raise InconsistentChain("pivot entry is zero")
        rest = [c for i, c in enumerate(col) if i != k]
        s = sum((a * b for a, b in zip(rest, x)), Fraction(0))
        x.insert(k, -s / col[k])
    if originals is not None:
        for v in originals:
            if sum((Fraction(a) * b for a, b in zip(v, x)), Fraction(0)) != 0:
                raise InconsistentChain("lifted point is not orthogonal to the flat")
    return tuple(x)
