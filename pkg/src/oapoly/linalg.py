"""Small exact linear algebra: fraction-free (Bareiss) elimination over Q."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .core import Vector, to_rational, vector


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(to_rational(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matvec(self, x: Sequence) -> Vector:
        x = vector(x)
        if len(x) != self.cols:
            raise ValueError(f"matrix has {self.cols} columns, vector has {len(x)} entries")
        return tuple(sum((a * b for a, b in zip(self.row(i), x)), Fraction(0)) for i in range(self.rows))


def _integer_rows(rows: list[list[Fraction]]) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; also return the product of the scale factors."""
    out, scale = [], Fraction(1)
    for r in rows:
        q = lcm(1, *(e.denominator for e in r))
        out.append([int(e * q) for e in r])
        scale *= q
    return out, scale


def _bareiss(rows: list[list[int]], n: int) -> int:
    """In-place fraction-free elimination of the leading n x n block.

    Returns the sign of the row permutation applied.  Raises on a zero pivot
    column.
    """
    sign, prev = 1, 1
    for k in range(n):
        p = next((i for i in range(k, n) if rows[i][k]), None)
        if p is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {k})")
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, len(ri)):
                ri[j] = (ri[j] * pivot - rik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign


def determinant(M: ExactMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(M.to_rows())
    try:
        sign = _bareiss(rows, M.rows)
    except SingularMatrixError:
        return Fraction(0)
    return Fraction(sign * rows[-1][-1]) / scale


def solve_exact(M: ExactMatrix, rhs: Sequence) -> Vector:
    """Solve ``M x = rhs`` exactly by Bareiss elimination and back substitution."""
    if M.rows != M.cols:
        raise ValueError(f"solve_exact needs a square matrix, got {M.rows}x{M.cols}")
    rhs = tuple(to_rational(b) for b in rhs)
    n = M.rows
    if len(rhs) != n:
        raise ValueError(f"rhs has {len(rhs)} entries for a {n}x{n} system")
    augmented = [r + [b] for r, b in zip(M.to_rows(), rhs)]
    rows, _ = _integer_rows(augmented)
    _bareiss(rows, n)
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        acc = Fraction(rows[i][n]) - sum((rows[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = acc / rows[i][i]
    return tuple(x)


def residual(M: ExactMatrix, x: Sequence, rhs: Sequence) -> Vector:
    return tuple(a - to_rational(b) for a, b in zip(M.matvec(x), rhs))
