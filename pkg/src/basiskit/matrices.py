"""Small dense matrices and vectors over an exact or float backend.

Everything is immutable: a matrix is a tuple of row tuples, a vector a
tuple of scalars.  Sizes in this package stay tiny (dimension five or so,
tensor squares up to 25), so plain Gaussian elimination is entirely
adequate and keeps one code path for both backends.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, Singular
from .scalars import Backend, Scalar

__all__ = [
    "Matrix",
    "Vector",
    "vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_eq",
    "vec_max_diff",
    "metric_dot",
]

Vector = tuple


def vector(values: Iterable, backend: Backend) -> Vector:
    """Coerce an iterable of numbers to a backend vector."""
    return tuple(backend.coerce(v) for v in values)


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def vec_eq(u: Vector, v: Vector, backend: Backend) -> bool:
    return len(u) == len(v) and all(backend.eq(a, b) for a, b in zip(u, v))


def vec_max_diff(u: Vector, v: Vector) -> float:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return max((abs(a - b) for a, b in zip(u, v)), default=0.0)


def metric_dot(u: Vector, v: Vector, signs: Sequence[int]) -> Scalar:
    """Scalar product with a diagonal metric of signs ``+1``/``-1``."""
    if not (len(u) == len(v) == len(signs)):
        raise DimensionMismatch("vector and metric lengths differ")
    total = signs[0] * u[0] * v[0]
    for s, a, b in zip(signs[1:], u[1:], v[1:]):
        total = total + s * a * b
    return total


@dataclass(frozen=True)
class Matrix:
    """Row-major dense matrix tied to a scalar backend."""

    entries: tuple
    backend: Backend

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], backend: Backend) -> "Matrix":
        coerced = tuple(tuple(backend.coerce(x) for x in row) for row in rows)
        if not coerced or not coerced[0]:
            raise DimensionMismatch("matrix needs at least one row and column")
        width = len(coerced[0])
        if any(len(row) != width for row in coerced):
            raise DimensionMismatch("matrix rows have unequal lengths")
        return cls(coerced, backend)

    @classmethod
    def identity(cls, n: int, backend: Backend) -> "Matrix":
        one, zero = backend.one(), backend.zero()
        return cls(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            backend,
        )

    @classmethod
    def diagonal(cls, values: Sequence, backend: Backend) -> "Matrix":
        zero = backend.zero()
        vals = [backend.coerce(v) for v in values]
        n = len(vals)
        return cls(
            tuple(
                tuple(vals[i] if i == j else zero for j in range(n)) for i in range(n)
            ),
            backend,
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries)), self.backend)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.mul(other)

    def mul(self, other: "Matrix") -> "Matrix":
        self.backend.require_same(other.backend)
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().entries
        return Matrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            ),
            self.backend,
        )

    def add(self, other: "Matrix") -> "Matrix":
        self.backend.require_same(other.backend)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
            self.backend,
        )

    def sub(self, other: "Matrix") -> "Matrix":
        self.backend.require_same(other.backend)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix(
            tuple(
                tuple(a - b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
            self.backend,
        )

    def scale(self, c) -> "Matrix":
        c = self.backend.coerce(c)
        return Matrix(
            tuple(tuple(c * a for a in row) for row in self.entries), self.backend
        )

    def matvec(self, u: Vector) -> Vector:
        """Apply to a column vector: ``(M u)_r = sum_c M[r][c] u[c]``."""
        if len(u) != self.ncols:
            raise DimensionMismatch(f"expected length {self.ncols}, got {len(u)}")
        return tuple(sum(a * b for a, b in zip(row, u)) for row in self.entries)

    def vecmat(self, u: Vector) -> Vector:
        """Apply to a row vector: ``(u M)_c = sum_r u[r] M[r][c]``."""
        if len(u) != self.nrows:
            raise DimensionMismatch(f"expected length {self.nrows}, got {len(u)}")
        return tuple(
            sum(u[r] * self.entries[r][c] for r in range(self.nrows))
            for c in range(self.ncols)
        )

    def det(self) -> Scalar:
        """Determinant by Gaussian elimination with partial pivoting."""
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.nrows
        rows = [list(r) for r in self.entries]
        det = self.backend.one()
        for k in range(n):
            pivot_row = max(range(k, n), key=lambda r: abs(rows[r][k]))
            if rows[pivot_row][k] == 0:
                return self.backend.zero()
            if pivot_row != k:
                rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
                det = -det
            pivot = rows[k][k]
            det = det * pivot
            for r in range(k + 1, n):
                factor = rows[r][k] / pivot
                if factor == 0:
                    continue
                for c in range(k, n):
                    rows[r][c] = rows[r][c] - factor * rows[k][c]
        return det

    def inverse(self) -> "Matrix":
        """Inverse by Gauss-Jordan elimination; raises Singular."""
        if not self.is_square:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        one, zero = self.backend.one(), self.backend.zero()
        aug = [
            list(row) + [one if i == j else zero for j in range(n)]
            for i, row in enumerate(self.entries)
        ]
        for k in range(n):
            pivot_row = max(range(k, n), key=lambda r: abs(aug[r][k]))
            if self._pivot_vanishes(aug[pivot_row][k]):
                raise Singular(f"matrix is singular at column {k}")
            if pivot_row != k:
                aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
            pivot = aug[k][k]
            aug[k] = [x / pivot for x in aug[k]]
            for r in range(n):
                if r == k or aug[r][k] == 0:
                    continue
                factor = aug[r][k]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[k])]
        return Matrix(tuple(tuple(row[n:]) for row in aug), self.backend)

    def _pivot_vanishes(self, pivot) -> bool:
        if self.backend.is_exact:
            return pivot == 0
        # A float pivot is only trusted when it clears the comparison
        # tolerance; smaller pivots are treated as rank deficiency.
        return abs(pivot) <= self.backend.tolerance

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, blocks of ``self[i][j] * other``."""
        self.backend.require_same(other.backend)
        rows = []
        for arow in self.entries:
            for brow in other.entries:
                rows.append(tuple(a * b for a in arow for b in brow))
        return Matrix(tuple(rows), self.backend)

    def block_diag(self, other: "Matrix") -> "Matrix":
        self.backend.require_same(other.backend)
        zero = self.backend.zero()
        top = tuple(row + (zero,) * other.ncols for row in self.entries)
        bottom = tuple((zero,) * self.ncols + row for row in other.entries)
        return Matrix(top + bottom, self.backend)

    def eq(self, other: "Matrix") -> bool:
        """Entrywise equality under the backend's comparison."""
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(
            self.backend.eq(a, b)
            for r1, r2 in zip(self.entries, other.entries)
            for a, b in zip(r1, r2)
        )

    def max_diff(self, other: "Matrix") -> float:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix shapes differ")
        return max(
            abs(a - b)
            for r1, r2 in zip(self.entries, other.entries)
            for a, b in zip(r1, r2)
        )

    def is_identity(self) -> bool:
        return self.is_square and self.eq(Matrix.identity(self.nrows, self.backend))

    def rows_as_lists(self) -> list:
        return [list(row) for row in self.entries]
