"""Exact linear algebra over the rationals.

Every subspace is stored by the reduced row echelon form of a spanning set,
so two subspaces are equal exactly when their basis grids are equal.  All
values are immutable; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

Row = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    """Operands live in spaces of different dimension."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Mat:
    """Dense row-major matrix of Fractions."""

    rows: tuple[Row, ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatch(f"row of length {len(row)} in a matrix with {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> Mat:
        grid = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if ncols is None:
            if not grid:
                raise ValueError("column count is required for a matrix without rows")
            ncols = len(grid[0])
        return cls(grid, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Mat:
        zero = Fraction(0)
        return cls(tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
            n,
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def transpose(self) -> Mat:
        if not self.rows:
            return Mat.zeros(self.ncols, 0)
        return Mat(tuple(zip(*self.rows)), self.nrows)

    def __matmul__(self, other: Mat) -> Mat:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for row in self.rows:
            nz = [(k, x) for k, x in enumerate(row) if x]
            out.append(tuple(sum((x * col[k] for k, x in nz), Fraction(0)) for col in cols))
        return Mat(tuple(out), other.ncols)

    def apply(self, vec: Sequence[Fraction]) -> Row:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for a matrix with {self.ncols} columns")
        nz = [(k, x) for k, x in enumerate(vec) if x]
        return tuple(sum((row[k] * x for k, x in nz), Fraction(0)) for row in self.rows)

    def vstack(self, other: Mat) -> Mat:
        if self.ncols != other.ncols:
            raise DimensionMismatch(f"cannot stack {self.shape} on {other.shape}")
        return Mat(self.rows + other.rows, self.ncols)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data: list[list], ncols: int | None = None) -> Mat:
        return cls.from_rows(data, ncols)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    ints = [x.numerator * (den // x.denominator) for x in row]
    g = gcd(*ints)
    return [v // g for v in ints] if g > 1 else ints


def _rref(rows: list[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination; returns the nonzero RREF rows and pivot columns.

    Elimination runs on primitive integer rows (each row scaled to coprime
    integers), which keeps the arithmetic exact without per-entry fraction
    normalization.  Pivot rows are divided by their pivot at the end.
    """
    work = [_integer_row(r) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == len(work):
            break
        pivot = None
        for i in range(rank, len(work)):
            v = work[i][col]
            if v and (pivot is None or abs(v) < abs(work[pivot][col])):
                pivot = i
                if abs(v) == 1:
                    break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        p = prow[col]
        support = [k for k in range(col, ncols) if prow[k]]
        for i in range(len(work)):
            if i == rank:
                continue
            row = work[i]
            f = row[col]
            if not f:
                continue
            g = gcd(p, f)
            a, b = p // g, f // g
            if a != 1:
                row = [a * x for x in row]
            for k in support:
                row[k] -= b * prow[k]
            h = gcd(*row)
            if h > 1:
                row = [x // h for x in row]
            work[i] = row
        pivots.append(col)
        rank += 1
    out = []
    for row, col in zip(work[:rank], pivots):
        p = row[col]
        out.append([Fraction(x, p) if x else Fraction(0) for x in row])
    return out, pivots


def rank(m: Mat) -> int:
    return len(_rref(m.rows, m.ncols)[1])


@dataclass(frozen=True)
class Subspace:
    """Row space of a matrix in reduced row echelon form."""

    ambient_dim: int
    basis: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(row) if x) for row in self.basis)

    def basis_mat(self) -> Mat:
        return Mat(self.basis, self.ambient_dim)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains_vector(self, vec: Sequence[Fraction]) -> bool:
        return coordinates(self, vec) is not None

    def __le__(self, other: Subspace) -> bool:
        return is_subspace(self, other)

    def to_json(self) -> list[list[str]]:
        return self.basis_mat().to_json()

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Mat.identity(n).rows)


def canonicalize(spanning_rows: Mat | Iterable[Sequence], ambient_dim: int | None = None) -> Subspace:
    """Return the row space of ``spanning_rows`` in canonical RREF form."""
    if isinstance(spanning_rows, Mat):
        n = spanning_rows.ncols
        grid = [list(r) for r in spanning_rows.rows]
    else:
        grid = [[to_rational(x) for x in r] for r in spanning_rows]
        if ambient_dim is None:
            if not grid:
                raise ValueError("ambient_dim is required for an empty spanning set")
            ambient_dim = len(grid[0])
        n = ambient_dim
    if ambient_dim is not None and ambient_dim != n:
        raise DimensionMismatch(f"spanning rows have {n} columns, expected {ambient_dim}")
    for r in grid:
        if len(r) != n:
            raise DimensionMismatch("ragged spanning set")
    rows, _ = _rref(grid, n)
    return Subspace(n, tuple(tuple(r) for r in rows))


def kernel(m: Mat) -> Subspace:
    """Right null space {v : m v = 0}."""
    n = m.ncols
    rows, pivots = _rref(m.rows, n)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    vectors = []
    for j in free:
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[j]
        vectors.append(v)
    return canonicalize(vectors, n) if vectors else Subspace.zero(n)


def annihilator_rows(W: Subspace) -> Mat:
    """Rows spanning the linear functionals (in coordinate duality) that vanish on W."""
    return kernel(W.basis_mat()).basis_mat() if W.dim else Mat.identity(W.ambient_dim)


def _check_same_ambient(A: Subspace, B: Subspace) -> None:
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {A.ambient_dim} vs {B.ambient_dim}")


def span_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("need at least one subspace")
    n = spaces[0].ambient_dim
    for s in spaces[1:]:
        _check_same_ambient(spaces[0], s)
    return canonicalize([r for s in spaces for r in s.basis], n)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """Intersection, computed as the common kernel of both annihilators."""
    _check_same_ambient(A, B)
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(A.ambient_dim)
    if A.is_full():
        return B
    if B.is_full():
        return A
    return kernel(annihilator_rows(A).vstack(annihilator_rows(B)))


def preimage(m: Mat, W: Subspace) -> Subspace:
    """{v : m v in W}."""
    if m.nrows != W.ambient_dim:
        raise DimensionMismatch(f"map has {m.nrows} rows, target subspace lives in dimension {W.ambient_dim}")
    if W.is_full():
        return Subspace.full(m.ncols)
    return kernel(annihilator_rows(W) @ m)


def image(m: Mat, V: Subspace) -> Subspace:
    if m.ncols != V.ambient_dim:
        raise DimensionMismatch(f"map has {m.ncols} columns, source subspace lives in dimension {V.ambient_dim}")
    return canonicalize([m.apply(v) for v in V.basis], m.nrows)


def coordinates(W: Subspace, vec: Sequence[Fraction]) -> Row | None:
    """Coordinates of ``vec`` in the RREF basis of W, or None if vec is not in W."""
    if len(vec) != W.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(vec)} in dimension {W.ambient_dim}")
    coords = tuple(vec[p] for p in W.pivots)
    residual = list(vec)
    for c, row in zip(coords, W.basis):
        if c:
            for k, x in enumerate(row):
                if x:
                    residual[k] -= c * x
    if any(residual):
        return None
    return coords


def is_subspace(A: Subspace, B: Subspace) -> bool:
    _check_same_ambient(A, B)
    return all(coordinates(B, v) is not None for v in A.basis)


def is_direct(*spaces: Subspace) -> bool:
    """True when the sum of the given spaces is direct."""
    return span_sum(*spaces).dim == sum(s.dim for s in spaces)
