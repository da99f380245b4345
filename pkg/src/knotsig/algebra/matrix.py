"""Exact integer and rational matrices.

Matrices are immutable tuples of rows.  Entries are Python ints (or
``Fraction`` where a rational matrix is needed); nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    """A dense matrix with exact entries, stored row-major."""

    rows: tuple[tuple, ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.nrows) if self.rows else Matrix([], 0)

    T = property(transpose)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return Matrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply_row(self, v: Sequence) -> list:
        """Row vector times matrix."""
        return [sum(v[i] * self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0 : c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(out, m)


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = []
    for ra in a.rows:
        for rb in b.rows:
            out.append([x * y for x in ra for y in rb])
    return Matrix(out, a.ncols * b.ncols)


def bareiss_determinant(m: Matrix | Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination.

    Every intermediate entry is a minor of the input, so the exact
    divisions never leave the integers.
    """
    if not isinstance(m, Matrix):
        m = Matrix(m)
    if not m.is_square:
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            a[i] = [0] * (k + 1) + [(ri[j] * pivot - f * rk[j]) // prev for j in range(k + 1, n)]
        prev = pivot
    return sign * a[-1][-1]


def cofactor_determinant(m: Matrix | Sequence[Sequence]) -> int | Fraction:
    """Laplace expansion along the first row; exponential, for cross-checks only."""
    rows = m.rows if isinstance(m, Matrix) else tuple(tuple(r) for r in m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of non-square matrix")

    def det(rs: tuple[int, ...], cs: tuple[int, ...]):
        if not rs:
            return 1
        i = rs[0]
        total = 0
        for k, j in enumerate(cs):
            if rows[i][j]:
                total += (-1) ** k * rows[i][j] * det(rs[1:], cs[:k] + cs[k + 1 :])
        return total

    return det(tuple(range(n)), tuple(range(n)))


def rational_determinant(m: Matrix | Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix: clear denominators, then Bareiss."""
    rows = m.rows if isinstance(m, Matrix) else m
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, Fraction(x).denominator)
    n = len(rows)
    scaled = [[int(Fraction(x) * den) for x in r] for r in rows]
    return Fraction(bareiss_determinant(Matrix(scaled, n)), den**n)


def solve_rational(a: Matrix | Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve a square system exactly; None if the matrix is singular."""
    rows = a.rows if isinstance(a, Matrix) else a
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(rows, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            return None
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [aug[i][n] for i in range(n)]


def inverse_rational(a: Matrix) -> Matrix:
    n = a.nrows
    cols = []
    for j in range(n):
        col = solve_rational(a, [int(i == j) for i in range(n)])
        if col is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(col)
    return Matrix(zip(*cols), n)

