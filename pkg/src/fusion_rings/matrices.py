"""Dense matrices over exact rationals, with Gaussian elimination."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> ExactMatrix:
        data = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged matrix rows")
        return cls(data, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> ExactMatrix:
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diagonal(cls, entries: Sequence) -> ExactMatrix:
        n = len(entries)
        return cls(
            tuple(tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)),
            n,
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ExactMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + other.scale(-1)

    def scale(self, k) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(k * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for r in self.rows:
            out.append(tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols))
        return ExactMatrix(tuple(out), other.ncols)

    def power(self, k: int) -> ExactMatrix:
        result = ExactMatrix.identity(self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((a * Fraction(v) for a, v in zip(r, vector)), Fraction(0)) for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def rank(self) -> int:
        return len(row_echelon(self.rows, self.ncols)[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel, one vector per free column."""
        reduced, pivots = row_echelon(self.rows, self.ncols)
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for row, pc in zip(reduced, pivots):
                v[pc] = -row[f]
            basis.append(tuple(v))
        return basis


def row_echelon(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        pivot = next((i for i in range(pr, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        inv = 1 / m[pr][c]
        m[pr] = [a * inv for a in m[pr]]
        for i in range(len(m)):
            if i != pr and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[pr])]
        pivots.append(c)
        pr += 1
        if pr == len(m):
            break
    return m[:pr], pivots
