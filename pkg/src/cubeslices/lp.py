"""Exact strict-feasibility oracle for homogeneous linear systems.

A system {<e, x> = 0, <c, x> > 0} is decided by maximizing a joint slack
t subject to <c, x> >= t inside a box. Equalities are eliminated first by
parametrizing their kernel, so the remaining LP has the origin as a
feasible start and needs no phase one.

The simplex runs on an integer tableau with fraction-free pivots and
Bland's rule, which guarantees termination on the highly degenerate
systems produced by cube vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import RationalMatrix, dot, integer_row, kernel_basis, rank, vector


@dataclass(frozen=True)
class ConstraintSystem:
    ambient_dim: int
    equalities: tuple = ()
    strict: tuple = ()

    def __post_init__(self):
        eqs = tuple(vector(e) for e in self.equalities)
        st = tuple(vector(c) for c in self.strict)
        for v in eqs + st:
            if len(v) != self.ambient_dim:
                raise ValueError("constraint length differs from ambient_dim")
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "strict", st)

    def satisfied_by(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equalities) and all(
            dot(c, x) > 0 for c in self.strict
        )


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple | None = None
    slack: Fraction | None = field(default=None, compare=False)

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"

    def __bool__(self):
        return self.feasible


INFEASIBLE = FeasibilityResult(False)


def _max_slack(C: list[list[int]], r: int) -> tuple[Fraction, list[Fraction]]:
    """max t s.t. C z >= t 1, -1 <= z <= 1, t <= 1.

    Variables are z = zp - zm with zp, zm in [0, 1] and t in [0, 1].
    Column layout: zp (r), zm (r), t, slacks (m), rhs.
    """
    nv = 2 * r + 1
    m = len(C) + nv
    width = nv + m + 1
    rows: list[list[int]] = []
    for i, c in enumerate(C):
        # -c.zp + c.zm + t <= 0
        row = [0] * width
        for j in range(r):
            row[j] = -c[j]
            row[r + j] = c[j]
        row[2 * r] = 1
        row[nv + i] = 1
        rows.append(row)
    for j in range(nv):
        row = [0] * width
        row[j] = 1
        row[nv + len(C) + j] = 1
        row[-1] = 1
        rows.append(row)
    obj = [0] * width
    obj[2 * r] = -1
    basis = [nv + i for i in range(m)]
    D = 1
    while True:
        enter = -1
        for j in range(width - 1):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        for i in range(m):
            a = rows[i][enter]
            if a <= 0:
                continue
            if leave < 0:
                leave = i
                continue
            # compare rhs_i / a with rhs_leave / a_leave
            lhs = rows[i][-1] * rows[leave][enter]
            rhs = rows[leave][-1] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                leave = i
        if leave < 0:  # cannot happen: feasible region is bounded
            raise RuntimeError("unbounded slack LP")
        pr = rows[leave]
        p = pr[enter]
        for row in rows + [obj]:
            if row is pr:
                continue
            f = row[enter]
            if f == 0:
                if p != D:
                    for j in range(width):
                        row[j] = row[j] * p // D
                continue
            for j in range(width):
                row[j] = (p * row[j] - f * pr[j]) // D
        D = p
        basis[leave] = enter
    values = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        if b < nv:
            values[b] = Fraction(rows[i][-1], D)
    t = Fraction(obj[-1], D)
    z = [values[j] - values[r + j] for j in range(r)]
    return t, z


def strict_feasible(S: ConstraintSystem) -> FeasibilityResult:
    n = S.ambient_dim
    if S.equalities:
        K = kernel_basis(RationalMatrix(S.equalities, n))
    else:
        K = [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    r = len(K)
    if not S.strict:
        return FeasibilityResult(True, tuple(Fraction(0) for _ in range(n)), None)
    # strict constraints in kernel coordinates, scaled to primitive integers
    C = []
    for c in S.strict:
        row = integer_row([dot(c, k) for k in K])
        if not any(row):
            return INFEASIBLE
        C.append(row)
    t, z = _max_slack(C, r)
    if t <= 0:
        return INFEASIBLE
    x = tuple(sum((zj * k[i] for zj, k in zip(z, K)), Fraction(0)) for i in range(n))
    if not S.satisfied_by(x):
        raise ArithmeticError("witness failed exact re-verification")
    return FeasibilityResult(True, x, t)


def cone_relint_dimension(S: ConstraintSystem) -> int | None:
    """Dimension of the cone when its strict part is nonempty, else None."""
    if not strict_feasible(S):
        return None
    if not S.equalities:
        return S.ambient_dim
    return S.ambient_dim - rank(RationalMatrix(S.equalities, S.ambient_dim))
