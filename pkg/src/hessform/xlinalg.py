"""Exact dense linear algebra over the rationals.

Matrices here are small (Hessians, coordinate changes, linearization maps of
a few dozen columns), so everything is dense and uses :class:`Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence


class SingularMatrixError(ValueError):
    pass


class ShapeError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


class Signature(NamedTuple):
    """Inertia of a symmetric matrix."""

    positives: int
    negatives: int
    zeros: int


class RationalMatrix:
    """Immutable dense matrix of :class:`Fraction` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(v if type(v) is Fraction else Fraction(v) for v in row) for row in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ShapeError("rows have unequal lengths")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows))) if self.rows else self

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self.rows)

    def __len__(self) -> int:
        return self.nrows

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self.rows[i][j]
        return self.rows[key]

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"RationalMatrix([{body}])"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __mul__(self, scalar) -> "RationalMatrix":
        return RationalMatrix([[a * scalar for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])
        vec = list(other)
        if len(vec) != self.ncols:
            raise ShapeError("vector length does not match column count")
        return [sum((a * Fraction(b) for a, b in zip(r, vec)), Fraction(0)) for r in self.rows]

    def quadratic_form(self, u: Sequence, v: Sequence | None = None) -> Fraction:
        """``u^T M v`` (``v`` defaults to ``u``)."""
        v = u if v is None else v
        return sum((Fraction(a) * b for a, b in zip(u, self @ v)), Fraction(0))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def to_float(self) -> list[list[float]]:
        return [[float(a) for a in r] for r in self.rows]

    def det(self) -> Fraction:
        return determinant(self)

    def inv(self) -> "RationalMatrix":
        return inverse(self)


def _as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def determinant(m) -> Fraction:
    """Determinant by Bareiss fraction-free elimination."""
    m = _as_matrix(m)
    if not m.is_square:
        raise ShapeError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in m.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) / prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def inverse(m) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    m = _as_matrix(m)
    if not m.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = m.nrows
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return RationalMatrix([row[n:] for row in a])


def _echelon(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    # Fraction-free (Bareiss-style) row echelon form with column skipping.
    a = [list(r) for r in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    prev = Fraction(1)
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row = a[i]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - aic * a[r][j]) / prev
            row[c] = Fraction(0)
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    m = _as_matrix(m)
    if not m.rows:
        return 0
    return len(_echelon(m)[1])


def nullspace(m, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in every other free
    column. ``ncols`` is needed only for a matrix with no rows.
    """
    m = _as_matrix(m)
    if not m.rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    a, pivots = _echelon(m)
    n = m.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row_idx in range(len(pivots) - 1, -1, -1):
            pc = pivots[row_idx]
            row = a[row_idx]
            s = sum((row[j] * v[j] for j in range(pc + 1, n) if row[j]), Fraction(0))
            v[pc] = -s / row[pc]
        basis.append(v)
    return basis


def charpoly(m) -> list[Fraction]:
    """Coefficients of ``det(t I - M)``, lowest degree first.

    Faddeev-LeVerrier recurrence.
    """
    m = _as_matrix(m)
    if not m.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = RationalMatrix.identity(n)
    mk = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ mk + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(m @ mk).trace() / k
    return coeffs


def _sign_changes(seq: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in seq if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(m) -> Signature:
    """Inertia of a symmetric matrix via Descartes' rule on its characteristic polynomial.

    The spectrum of a real symmetric matrix is real, so sign-change counts are
    exact root counts.
    """
    m = _as_matrix(m)
    if not m.is_symmetric:
        raise NotSymmetricError("signature needs a symmetric matrix")
    coeffs = charpoly(m)
    zeros = next(i for i, c in enumerate(coeffs) if c != 0)
    reduced = coeffs[zeros:]
    positives = _sign_changes(reduced)
    negatives = _sign_changes([c if k % 2 == 0 else -c for k, c in enumerate(reduced)])
    return Signature(positives, negatives, zeros)


def matrix_power_poly(coeffs: Sequence[Fraction], m) -> RationalMatrix:
    """Evaluate the polynomial with the given coefficients (lowest first) at ``m``."""
    m = _as_matrix(m)
    n = m.nrows
    acc = RationalMatrix.zeros(n, n)
    for c in reversed(coeffs):
        acc = acc @ m + RationalMatrix.identity(n) * c
    return acc
