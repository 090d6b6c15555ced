"""Slices C_d ∩ H: vertices, facets, incidence and the face lattice."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cube import AFFINE, CENTRAL, edges, facets, vertex_coords
from .linalg import as_rational, format_vector, int_rank, integer_row


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : <w, x> = a}."""

    w: tuple
    a: Fraction = Fraction(0)

    def __post_init__(self):
        w = tuple(as_rational(x) for x in self.w)
        if not any(w):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "a", as_rational(self.a))

    @property
    def d(self) -> int:
        return len(self.w)

    @property
    def is_central(self) -> bool:
        return self.a == 0

    @classmethod
    def from_ambient(cls, u: Sequence, mode: str = AFFINE) -> "Hyperplane | None":
        """Hyperplane of an arrangement witness; None when w would vanish.

        In affine mode the vertex (v, 1) pairs with u as <w, v> + u_{d+1},
        so w = u[:d] and a = -u[d].
        """
        u = tuple(as_rational(x) for x in u)
        if mode == AFFINE:
            w, a = u[:-1], -u[-1]
        else:
            w, a = u, Fraction(0)
        if not any(w):
            return None
        return cls(w, a)

    def integer_form(self) -> tuple[tuple[int, ...], int]:
        row = integer_row(self.w + (self.a,))
        return tuple(row[:-1]), row[-1]

    def values(self) -> list[int]:
        """Scaled <w, v> - a on every cube vertex (signs are exact)."""
        W, A = self.integer_form()
        return [sum(a * b for a, b in zip(W, v)) - A for v in vertex_coords(self.d)]

    def labeling(self) -> tuple[int, ...]:
        return tuple((x > 0) - (x < 0) for x in self.values())

    def __str__(self):
        return f"<({format_vector(self.w)}), x> = {self.a}"


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Slice:
    """Nondegenerate slice of the cube.

    ``sources[i]`` is the cube vertex index of a white vertex, or the cube
    edge (i, j) of a black one. ``incidence[i]`` is a bitmask over slice
    facets; ``facets[f]`` lists the cube facet labels cutting out facet f.
    """

    def __init__(self, d, hyperplane, vertices, sources, facets, incidence, k, mode):
        self.d = d
        self.hyperplane = hyperplane
        self.vertices = vertices
        self.sources = sources
        self.is_cube_vertex = tuple(isinstance(s, int) for s in sources)
        self.facets = facets
        self.incidence = incidence
        self.k = k
        self.mode = mode
        self._faces = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def facet_vertex_masks(self) -> list[int]:
        masks = [0] * len(self.facets)
        for i, inc in enumerate(self.incidence):
            for f in range(len(self.facets)):
                if (inc >> f) & 1:
                    masks[f] |= 1 << i
        return masks

    def faces(self) -> dict[int, int]:
        """Map from face vertex-mask to face dimension (proper faces only)."""
        if self._faces is None:
            self._faces = face_lattice(self.facet_vertex_masks(), self.d - 1)
        return self._faces

    @property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.d - 1)
        for dim in self.faces().values():
            counts[dim] += 1
        return tuple(counts)

    def graph_edges(self) -> list[tuple[int, int]]:
        out = []
        for mask, dim in self.faces().items():
            if dim == 1:
                i = (mask & -mask).bit_length() - 1
                j = mask.bit_length() - 1
                out.append((i, j))
        return sorted(out)

    @property
    def white_count(self) -> int:
        return sum(self.is_cube_vertex)

    def __repr__(self):
        return (
            f"Slice(d={self.d}, f={list(self.f_vector)}, k={self.k}, "
            f"white={self.white_count})"
        )


def face_lattice(facet_masks: Sequence[int], polytope_dim: int) -> dict[int, int]:
    """Faces as intersections of facets, each with its dimension.

    Dimension is the length of the longest chain of faces below it, which
    for a polytope equals its geometric dimension.
    """
    fm = list(dict.fromkeys(facet_masks))
    faces = set(fm)
    frontier = list(fm)
    while frontier:
        nxt = []
        for F in frontier:
            for G in fm:
                H = F & G
                if H and H not in faces:
                    faces.add(H)
                    nxt.append(H)
        frontier = nxt
    order = sorted(faces, key=_popcount)
    dims: dict[int, int] = {}
    for F in order:
        best = -1
        for G, dg in dims.items():
            if G != F and G & F == G and dg > best:
                best = dg
        dims[F] = best + 1
    for F in fm:
        if dims[F] != polytope_dim - 1:
            raise ArithmeticError("facet of unexpected dimension")
    return dims


def _homog_rank(points: Sequence[Sequence]) -> int:
    return int_rank(integer_row(tuple(p) + (1,)) for p in points)


def build_slice(d: int, H: Hyperplane, mode: str | None = None) -> Slice | None:
    """Slice C_d ∩ H, or None when it is not (d-1)-dimensional.

    ``mode`` decides how k is measured: rank of the contained cube vertices
    after homogenizing (affine) or as plain vectors (central). It defaults
    to central for central hyperplanes.
    """
    if H.d != d:
        raise ValueError("hyperplane dimension differs from d")
    if mode is None:
        mode = CENTRAL if H.is_central else AFFINE
    coords = vertex_coords(d)
    g = H.values()
    pts: list[tuple[tuple, object]] = []
    for i, v in enumerate(coords):
        if g[i] == 0:
            pts.append((tuple(Fraction(x) for x in v), i))
    for i, j in edges(d):
        gi, gj = g[i], g[j]
        if (gi > 0 and gj < 0) or (gi < 0 and gj > 0):
            e = (i ^ j).bit_length() - 1
            x = list(Fraction(c) for c in coords[i])
            x[e] = Fraction(gi + gj, gi - gj)
            pts.append((tuple(x), (i, j)))
    if not pts:
        return None
    pts.sort(key=lambda t: t[0])
    verts = tuple(p for p, _ in pts)
    sources = tuple(s for _, s in pts)
    if _homog_rank(verts) < d:
        return None
    groups: dict[int, list] = {}
    order: list[int] = []
    for f in facets(d):
        j, s = f
        mask = 0
        on = []
        for idx, p in enumerate(verts):
            if p[j] == s:
                mask |= 1 << idx
                on.append(p)
        if not on or _homog_rank(on) != d - 1:
            continue
        if mask not in groups:
            groups[mask] = []
            order.append(mask)
        groups[mask].append(f)
    facet_list = tuple(tuple(groups[m]) for m in order)
    incidence = []
    for idx in range(len(verts)):
        inc = 0
        for fi, m in enumerate(order):
            if (m >> idx) & 1:
                inc |= 1 << fi
        incidence.append(inc)
    white = [coords[s] for s in sources if isinstance(s, int)]
    if not white:
        k = 0
    elif mode == AFFINE:
        k = int_rank(tuple(v) + (1,) for v in white)
    else:
        k = int_rank(white)
    return Slice(d, H, verts, sources, facet_list, tuple(incidence), k, mode)


def f_vector(S: Slice) -> tuple[int, ...]:
    return S.f_vector


def facet_count_profile(S: Slice) -> int:
    return S.n_facets


def euler_ok(fv: Sequence[int]) -> bool:
    """Alternating sum of a (d-2)-sphere's f-vector: 1 - (-1)^(d-1)."""
    n = len(fv)  # n = d - 1 = polytope dimension
    return sum((-1) ** i * f for i, f in enumerate(fv)) == 1 - (-1) ** n
