"""Exact rational linear algebra.

Matrices are immutable row-major grids of :class:`fractions.Fraction`.
Elimination runs fraction-free on integer rows (rows are rescaled by the
lcm of their denominators first), so intermediate growth stays bounded by
the size of minors.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
RationalVector = tuple  # tuple[Fraction, ...]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, exact floats and "p/q" strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def vector(entries: Iterable) -> tuple:
    v = tuple(as_rational(e) for e in entries)
    if not v:
        raise ValueError("vectors must have dimension >= 1")
    return v


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    if not token or any(c.isspace() for c in token):
        raise ValueError(f"bad rational token {token!r}")
    num, sep, den = token.partition("/")
    if sep:
        if int(den) == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_vector(v: Sequence) -> str:
    return " ".join(format_rational(x) for x in v)


def parse_vector(line: str) -> tuple:
    return tuple(parse_rational(t) for t in line.split())


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def primitive(row: Sequence) -> tuple[int, ...]:
    """Smallest integer vector positively proportional to ``row``."""
    ints = integer_row(row)
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def sign_normalized(row: Sequence) -> tuple[int, ...]:
    """Primitive integer vector whose first nonzero entry is positive."""
    p = primitive(row)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


class RationalMatrix:
    """Immutable exact matrix; ``rows`` is a tuple of Fraction tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RationalMatrix":
        if not cols:
            if nrows is None:
                raise ValueError("nrows required for a matrix with no columns")
            return cls([() for _ in range(nrows)], 0)
        return cls(zip(*cols), len(cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.columns(), self.nrows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.columns()
            return RationalMatrix(
                [[dot(r, c) for c in cols] for r in self.rows], other.ncols
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(dot(r, v) for r in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(format_vector(r) for r in self.rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: {body})"

    def integer_rows(self) -> list[list[int]]:
        return [integer_row(r) for r in self.rows]


def _as_int_rows(M) -> tuple[list[list[int]], int]:
    if isinstance(M, RationalMatrix):
        return M.integer_rows(), M.ncols
    rows = [integer_row(r) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination (mutates rows)."""
    m = rows
    nr = len(m)
    if nr == 0:
        return 0
    nc = len(m[0])
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        piv = r
        while piv < nr and m[piv][c] == 0:
            piv += 1
        if piv == nr:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        p = pr[c]
        for i in range(r + 1, nr):
            mi = m[i]
            f = mi[c]
            if f == 0:
                if p != prev:
                    for j in range(c + 1, nc):
                        mi[j] = mi[j] * p // prev
                continue
            for j in range(c + 1, nc):
                mi[j] = (p * mi[j] - f * pr[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
    return r


def int_rank(rows: Iterable[Sequence[int]]) -> int:
    return bareiss_rank([list(r) for r in rows])


def rank(M) -> int:
    rows, _ = _as_int_rows(M)
    return bareiss_rank(rows)


def _gauss_jordan(m: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """Fraction-free Gauss-Jordan in place.

    Afterwards every pivot row holds the common pivot value D at its pivot
    column and zeros elsewhere in pivot columns; entries divided by D give
    the reduced row echelon form.
    """
    nr = len(m)
    r = 0
    prev = 1
    pivots: list[int] = []
    for c in range(ncols):
        if r == nr:
            break
        piv = r
        while piv < nr and m[piv][c] == 0:
            piv += 1
        if piv == nr:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        p = pr[c]
        for i in range(nr):
            if i == r:
                continue
            mi = m[i]
            f = mi[c]
            for j in range(ncols):
                mi[j] = (p * mi[j] - f * pr[j]) // prev
        pivots.append(c)
        prev = p
        r += 1
    return pivots, prev


def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = M.integer_rows()
    pivots, D = _gauss_jordan(m, M.ncols)
    out = [[Fraction(x, D) for x in m[i]] for i in range(len(pivots))]
    out += [[Fraction(0)] * M.ncols for _ in range(M.nrows - len(pivots))]
    return RationalMatrix(out, M.ncols), pivots


def kernel_basis(M) -> list[tuple]:
    """Basis of the right kernel, one vector per free column.

    Each vector has a 1 in its free column; vectors are returned scaled to
    primitive integer form when that keeps them integral (it always does
    after clearing denominators), which keeps downstream arithmetic small.
    """
    if not isinstance(M, RationalMatrix):
        M = RationalMatrix(M) if M else None
    if M is None:
        raise ValueError("kernel_basis of an empty row list needs a RationalMatrix")
    n = M.ncols
    m = M.integer_rows()
    pivots, D = _gauss_jordan(m, n)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        # x_f = D, x_pivot(i) = -m[i][f], rest 0
        v = [0] * n
        v[f] = D
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(tuple(Fraction(x) for x in primitive(v)))
    return basis


def solve(M: RationalMatrix, b: Sequence):
    """One exact solution of M x = b, or None if inconsistent."""
    b = vector(b) if len(b) else ()
    if len(b) != M.nrows:
        raise ValueError("b.dim must equal M.rows")
    n = M.ncols
    aug = RationalMatrix([r + (bi,) for r, bi in zip(M.rows, b)], n + 1)
    m = aug.integer_rows()
    pivots, D = _gauss_jordan(m, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = Fraction(m[i][n], D)
    return tuple(x)


def orthogonal_complement(rows: Sequence[Sequence], n: int) -> list[tuple]:
    """Basis of {x : <r, x> = 0 for all r in rows} in dimension n."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return kernel_basis(RationalMatrix(rows, n))
