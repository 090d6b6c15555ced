"""Chambers of central hyperplane arrangements, with exact witnesses.

The default enumerator is incremental (deletion/restriction): hyperplanes
are inserted one at a time, and the chambers cut by a new hyperplane c are
found by enumerating the chambers of the previous arrangement restricted to
c-perp and lifting their witnesses back. No LP is needed. The adjacency walk
that tests every single-sign flip with the LP oracle is kept as
``method="walk"``; it is slower but independent, and the tests compare
the two.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Sequence

import numpy as np

from .cube import (
    CubeSpec,
    Flat,
    RestrictionChain,
    VertexTuple,
    embedded_vertices,
    lift,
    restrict_tuple,
    vertices,
)
from .linalg import primitive, sign_normalized
from .lp import ConstraintSystem, strict_feasible


@dataclass(frozen=True)
class ArrangementSpec:
    ambient_dim: int
    normals: tuple  # primitive integer tuples, first nonzero entry positive
    provenance: tuple  # original indices merged into each normal
    dropped: tuple = ()  # indices of zero inputs

    @property
    def n(self) -> int:
        return len(self.normals)


@dataclass(frozen=True)
class Chamber:
    sign: tuple  # +1 / -1 per normal
    witness: tuple
    flat: object = None  # VertexTuple or Flat context, if any


def build(normals: Sequence[Sequence], ambient_dim: int | None = None) -> ArrangementSpec:
    """Merge parallel and opposite normals, drop zero ones."""
    normals = list(normals)
    if ambient_dim is None:
        if not normals:
            raise ValueError("ambient_dim required for an empty arrangement")
        ambient_dim = len(normals[0])
    order: list[tuple[int, ...]] = []
    prov: dict[tuple[int, ...], list[int]] = {}
    dropped = []
    for i, v in enumerate(normals):
        if len(v) != ambient_dim:
            raise ValueError("normal length differs from ambient_dim")
        key = sign_normalized(v)
        if not any(key):
            dropped.append(i)
            continue
        if key not in prov:
            prov[key] = []
            order.append(key)
        prov[key].append(i)
    return ArrangementSpec(
        ambient_dim,
        tuple(order),
        tuple(tuple(prov[k]) for k in order),
        tuple(dropped),
    )


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _prim(v: list) -> tuple:
    return primitive(v)


def _restrict_onto(normals: list[tuple], c: tuple) -> tuple[list[tuple], int]:
    """Normals expressed on c-perp in the coordinates q (all but pivot k).

    A point q lifts to x with x_r = |c_k| q_r (r != k) and
    x_k = -sgn(c_k) sum_r c_r q_r, so <a, x> = <b, q> with
    b_r = sgn(c_k) (c_k a_r - a_k c_r).
    """
    k = next(i for i, x in enumerate(c) if x)
    ck = c[k]
    s = 1 if ck > 0 else -1
    out = []
    for a in normals:
        ak = a[k]
        out.append(tuple(s * (ck * a[r] - ak * c[r]) for r in range(len(c)) if r != k))
    return out, k


def _lift_onto(q: tuple, c: tuple, k: int) -> tuple:
    ck = c[k]
    s = 1 if ck > 0 else -1
    rest = [r for r in range(len(c)) if r != k]
    x = [0] * len(c)
    acc = 0
    for qi, r in zip(q, rest):
        x[r] = abs(ck) * qi
        acc += c[r] * qi
    x[k] = -s * acc
    return tuple(x)


def _incremental(normals: list[tuple], dim: int) -> list[tuple[int, tuple]]:
    """Chambers as (mask, integer witness); bit j of mask set iff <a_j, x> > 0.

    ``normals`` must be pairwise non-parallel and nonzero.
    """
    if dim == 0:
        return [(0, ())]
    chambers: list[tuple[int, tuple]] = [(0, (0,) * dim)]
    done: list[tuple] = []
    for i, c in enumerate(normals):
        bit = 1 << i
        if not done:
            e = tuple(c)
            chambers = [(bit, e), (0, tuple(-x for x in e))]
            done.append(c)
            continue
        restricted, k = _restrict_onto(done, c)
        # dedup restricted normals, remembering nothing: signs are recomputed
        uniq = {}
        for b in restricted:
            key = sign_normalized(b)
            if any(key):
                uniq.setdefault(key, None)
        sub = _incremental(list(uniq), dim - 1)
        cut: dict[int, tuple] = {}
        for _, q in sub:
            x = _lift_onto(q, c, k)
            mask = 0
            for j, a in enumerate(done):
                if _dot(a, x) > 0:
                    mask |= 1 << j
            cut[mask] = x
        betas = [(a, abs(_dot(a, c))) for a in done]
        betas = [(a, b) for a, b in betas if b]
        new: list[tuple[int, tuple]] = []
        for mask, p in chambers:
            x = cut.get(mask)
            if x is None:
                new.append((mask | bit if _dot(c, p) > 0 else mask, p))
                continue
            # largest step along c staying inside the chamber, halved
            num, den = 1, 1
            for a, beta in betas:
                alpha = abs(_dot(a, x))
                if alpha * den < num * beta:
                    num, den = alpha, beta
            den *= 2
            plus = _prim([den * xi + num * ci for xi, ci in zip(x, c)])
            minus = _prim([den * xi - num * ci for xi, ci in zip(x, c)])
            new.append((mask | bit, plus))
            new.append((mask, minus))
        chambers = new
        done.append(c)
    return chambers


class _Overflow(Exception):
    pass


_LIMIT = 1 << 62


def _maxabs(M) -> int:
    return int(np.abs(M).max()) if M.size else 0


def _normalize_rows(M: np.ndarray) -> np.ndarray:
    """Primitive, sign-normalized, nonzero, distinct rows (sorted)."""
    if M.size == 0:
        return M.reshape(0, M.shape[1])
    g = np.gcd.reduce(np.abs(M), axis=1)
    keep = g != 0
    M, g = M[keep], g[keep]
    M = M // g[:, None]
    first = np.argmax(M != 0, axis=1)
    sgn = np.sign(M[np.arange(len(M)), first])
    M = M * sgn[:, None]
    return np.unique(M, axis=0)


def _pack(B: np.ndarray) -> np.ndarray:
    """Bool matrix (m x n, n <= 63) to uint64 masks."""
    if B.shape[1] == 0:
        return np.zeros(B.shape[0], dtype=np.uint64)
    shifts = np.left_shift(np.uint64(1), np.arange(B.shape[1], dtype=np.uint64))
    return np.bitwise_or.reduce(B.astype(np.uint64) * shifts, axis=1)


def _np_incremental(N: np.ndarray, memo: dict | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized version of ``_incremental`` on int64 arrays.

    Restricted subproblems recur often, so they are memoized by their
    normal matrix. Raises _Overflow when a product could leave int64.
    """
    if memo is None:
        memo = {}
    n, dim = N.shape
    key = (n, dim, N.tobytes())
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = _np_incremental_raw(N, memo)
    memo[key] = out
    return out


def _np_incremental_raw(N: np.ndarray, memo: dict) -> tuple[np.ndarray, np.ndarray]:
    n, dim = N.shape
    if dim == 0:
        return np.zeros(1, dtype=np.uint64), np.zeros((1, 0), dtype=np.int64)
    if n == 0:
        return np.zeros(1, dtype=np.uint64), np.zeros((1, dim), dtype=np.int64)
    if n > 63:
        raise _Overflow
    masks = np.array([1, 0], dtype=np.uint64)
    W = np.stack([N[0], -N[0]])
    for i in range(1, n):
        c = N[i]
        done = N[:i]
        k = int(np.flatnonzero(c)[0])
        ck = int(c[k])
        s = 1 if ck > 0 else -1
        rest = [r for r in range(dim) if r != k]
        if _maxabs(done) * abs(ck) * 2 >= _LIMIT or _maxabs(c) * _maxabs(done) * 2 >= _LIMIT:
            raise _Overflow
        R = s * (ck * done[:, rest] - np.outer(done[:, k], c[rest]))
        _, Q = _np_incremental(_normalize_rows(R), memo)
        if _maxabs(Q) * (abs(ck) + _maxabs(c) * dim) >= _LIMIT:
            raise _Overflow
        X = np.zeros((len(Q), dim), dtype=np.int64)
        X[:, rest] = abs(ck) * Q
        X[:, k] = -s * (Q @ c[rest])
        if _maxabs(X) * _maxabs(done) * dim >= _LIMIT or _maxabs(W) * _maxabs(c) * dim >= _LIMIT:
            raise _Overflow
        P = X @ done.T
        cutmasks = _pack(P > 0)
        order = np.argsort(cutmasks, kind="stable")
        cs = cutmasks[order]
        pos = np.searchsorted(cs, masks)
        pos = np.minimum(pos, len(cs) - 1)
        hit = cs[pos] == masks
        bit = np.uint64(1) << np.uint64(i)
        un = ~hit
        side = (W[un] @ c) > 0
        um = masks[un] | np.where(side, bit, np.uint64(0))
        Xc = X[order[pos[hit]]]
        alpha = np.abs(P[order[pos[hit]]]).min(axis=1)
        beta = int(np.abs(done @ c).max())
        beta = max(beta, 1)
        if _maxabs(Xc) * 2 * beta + _maxabs(alpha) * _maxabs(c) >= _LIMIT:
            raise _Overflow
        base = 2 * beta * Xc
        step = alpha[:, None] * c[None, :]
        plus = base + step
        minus = base - step
        both = np.concatenate([plus, minus])
        g = np.gcd.reduce(np.abs(both), axis=1)
        both = both // g[:, None]
        cm = masks[hit]
        masks = np.concatenate([um, cm | bit, cm])
        W = np.concatenate([W[un], both])
    return masks, W


def chamber_witnesses(normals: Sequence[Sequence], dim: int) -> tuple[list[int], list[tuple]]:
    """Masks and primitive integer witnesses of all chambers.

    Uses the int64 path when safe and the exact pure-Python path otherwise.
    """
    normals = [tuple(int(x) for x in a) for a in normals]
    if len(normals) <= 63:
        try:
            N = np.array(normals, dtype=np.int64).reshape(len(normals), dim)
            if _maxabs(N) < (1 << 20):
                masks, W = _np_incremental(N)
                return [int(m) for m in masks], [tuple(int(x) for x in w) for w in W]
        except _Overflow:
            pass
    raw = _incremental(normals, dim)
    return [m for m, _ in raw], [w for _, w in raw]


def _mask_to_sign(mask: int, n: int) -> tuple:
    return tuple(1 if (mask >> j) & 1 else -1 for j in range(n))


def _start_direction(spec: ArrangementSpec) -> tuple:
    """Point on the ray (1, t, t^2, ...) avoiding every hyperplane."""
    t = 2
    while True:
        x = tuple(t**i for i in range(spec.ambient_dim))
        if all(_dot(a, x) != 0 for a in spec.normals):
            return x
        t += 1


def _system_for(spec: ArrangementSpec, sign: Sequence[int]) -> ConstraintSystem:
    strict = [tuple(s * x for x in a) for s, a in zip(sign, spec.normals)]
    return ConstraintSystem(spec.ambient_dim, (), tuple(strict))


def _walk(spec: ArrangementSpec) -> list[tuple[tuple, tuple]]:
    n = spec.n
    allpos = (1,) * n
    res = strict_feasible(_system_for(spec, allpos))
    if res:
        start = allpos
    else:
        x = _start_direction(spec)
        start = tuple(1 if _dot(a, x) > 0 else -1 for a in spec.normals)
        res = strict_feasible(_system_for(spec, start))
    seen = {start: res.witness}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for i in range(n):
            t = s[:i] + (-s[i],) + s[i + 1 :]
            if t in seen:
                continue
            r = strict_feasible(_system_for(spec, t))
            if r:
                seen[t] = r.witness
                queue.append(t)
    return list(seen.items())


def enumerate_chambers(spec: ArrangementSpec, method: str = "incremental", flat=None) -> list[Chamber]:
    """All chambers, sorted by sign vector (with -1 < +1)."""
    if method == "incremental":
        masks, ws = chamber_witnesses(spec.normals, spec.ambient_dim)
        out = [
            Chamber(_mask_to_sign(m, spec.n), tuple(Fraction(x) for x in w), flat)
            for m, w in zip(masks, ws)
        ]
    elif method == "walk":
        out = [Chamber(s, w, flat) for s, w in _walk(spec)]
    else:
        raise ValueError(f"unknown method {method!r}")
    for ch in out:
        for s, a in zip(ch.sign, spec.normals):
            if s * _dot(a, ch.witness) <= 0:
                raise ArithmeticError("chamber witness failed verification")
    out.sort(key=lambda ch: ch.sign)
    return out


def count_chambers(spec: ArrangementSpec) -> int:
    return len(chamber_witnesses(spec.normals, spec.ambient_dim)[0])


def master_arrangement(spec: CubeSpec) -> ArrangementSpec:
    return build(embedded_vertices(spec), spec.ambient)


def restricted_arrangement(spec: CubeSpec, flat) -> tuple[ArrangementSpec, RestrictionChain, list[int]]:
    """Arrangement of the cube vertices restricted to the orthogonal
    complement of a vertex tuple (or flat basis).

    The third value maps restricted columns back to cube-vertex indices.
    """
    basis = _basis_of(flat)
    A = vertices(spec)
    R, chain, labels = restrict_tuple(A, basis)
    arr = build(R.columns(), R.nrows)
    prov = tuple(tuple(labels[i] for i in grp) for grp in arr.provenance)
    dropped = tuple(labels[i] for i in arr.dropped)
    return ArrangementSpec(arr.ambient_dim, arr.normals, prov, dropped), chain, labels


def _basis_of(flat) -> tuple[int, ...]:
    if isinstance(flat, Flat):
        return flat.basis
    if isinstance(flat, VertexTuple):
        return flat.vertices
    return tuple(flat)


def lift_matrix(chain: RestrictionChain, restricted_dim: int) -> list[tuple[int, ...]]:
    """Integer matrix (rows = ambient coordinates) proportional to the lift.

    The lift is linear, so lifting the unit vectors gives its columns; one
    common positive scale clears all denominators.
    """
    cols = []
    for i in range(restricted_dim):
        e = [Fraction(int(i == j)) for j in range(restricted_dim)]
        cols.append(lift(e, chain))
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for c in cols for x in c), 1)
    n = len(cols[0]) if cols else 0
    return [tuple(int(cols[j][r] * den) for j in range(restricted_dim)) for r in range(n)]


def cell_witnesses(spec: CubeSpec, flat) -> tuple[ArrangementSpec, list[int], list[tuple]]:
    """Masks and primitive ambient integer witnesses of the cells on a flat."""
    arr, chain, _ = restricted_arrangement(spec, flat)
    if arr.ambient_dim == 0:
        return arr, [], []
    masks, ws = chamber_witnesses(arr.normals, arr.ambient_dim)
    L = lift_matrix(chain, arr.ambient_dim)
    out = []
    for w in ws:
        x = [sum(a * b for a, b in zip(row, w)) for row in L]
        out.append(primitive(x))
    return arr, masks, out


def enumerate_cells_on_flat(spec: CubeSpec, flat, method: str = "incremental") -> list[Chamber]:
    """Maximal cells on a flat, with witnesses lifted to the ambient space."""
    emb = embedded_vertices(spec)
    originals = [emb[v] for v in _basis_of(flat)]
    if method == "incremental":
        arr, masks, ws = cell_witnesses(spec, flat)
        out = [
            Chamber(_mask_to_sign(m, arr.n), tuple(Fraction(x) for x in w), flat)
            for m, w in zip(masks, ws)
        ]
    else:
        arr, chain, _ = restricted_arrangement(spec, flat)
        if arr.ambient_dim == 0:
            return []
        out = []
        for ch in enumerate_chambers(arr, method=method):
            w = lift(ch.witness, chain)
            den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in w), 1)
            w = tuple(Fraction(x) for x in primitive([x * den for x in w]))
            out.append(Chamber(ch.sign, w, flat))
    for ch in out:
        for v in originals:
            if sum(a * b for a, b in zip(v, ch.witness)) != 0:
                raise ArithmeticError("lifted witness leaves the flat")
    out.sort(key=lambda ch: ch.sign)
    return out
