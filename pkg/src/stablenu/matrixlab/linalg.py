"""Exact linear algebra over the rationals.

Entries are :class:`fractions.Fraction`; nothing here ever rounds.  Matrices
are immutable row tuples.  Elimination is plain Gauss-Jordan over Q, which
at these sizes is faster in pure Python than a fraction-free variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ..errors import InputError, SingularPivotError

Number = Union[int, Fraction, str]
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[Vector, ...]
    ncols: int

    def __init__(self, rows: Iterable[Iterable[Number]], ncols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        width = len(data[0]) if data else (ncols or 0)
        if ncols is not None and data and width != ncols:
            raise InputError("row length does not match the declared column count")
        if any(len(r) != width for r in data):
            raise InputError("ragged matrix")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "ncols", width)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "RationalMatrix":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def ones(cls, n: int) -> "RationalMatrix":
        return cls([[1] * n for _ in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise InputError("matrix is not square")
        return self.nrows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows), self.nrows) if self.rows else RationalMatrix.zeros(self.ncols, 0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise InputError("shape mismatch in product")
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), ZERO) for c in cols]
                               for r in self.rows], other.ncols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                              self.ncols)

    def apply(self, y: Sequence[Fraction]) -> Vector:
        return tuple(sum((a * b for a, b in zip(r, y)), ZERO) for r in self.rows)

    def left_apply(self, x: Sequence[Fraction]) -> Vector:
        return tuple(sum((x[i] * self.rows[i][j] for i in range(self.nrows)), ZERO)
                     for j in range(self.ncols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != 1:
            A[r] = [x / piv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                A[i] = [a - f * b for a, b in zip(Ai, Ar)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(B: RationalMatrix) -> int:
    return len(rref(B.rows, B.ncols)[1])


def right_nullspace(B: RationalMatrix) -> list[Vector]:
    """Basis of {y : B y = 0}, one vector per free column."""
    R, pivots = rref(B.rows, B.ncols)
    free = [c for c in range(B.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        y = [ZERO] * B.ncols
        y[f] = ONE
        for k, p in enumerate(pivots):
            y[p] = -R[k][f]
        basis.append(tuple(y))
    return basis


def left_nullspace(B: RationalMatrix) -> list[Vector]:
    """Basis of {x : x^T B = 0}."""
    return right_nullspace(B.T)


def nullity(B: RationalMatrix) -> int:
    return B.ncols - rank(B)


def solve(B: RationalMatrix, rhs: RationalMatrix) -> RationalMatrix:
    """The unique Z with B Z = rhs, for square nonsingular B."""
    n = B.n
    aug = [list(B.rows[i]) + list(rhs.rows[i]) for i in range(n)]
    R, pivots = rref(aug, n + rhs.ncols)
    if pivots[:n] != list(range(n)):
        raise SingularPivotError("pivot block is singular")
    return RationalMatrix([row[n:] for row in R[:n]], rhs.ncols)


def schur_complement(B: RationalMatrix, S: Iterable[int]) -> tuple[RationalMatrix, tuple[int, ...]]:
    """B/B[S] together with the original indices of its rows and columns."""
    n = B.n
    S = sorted(set(S))
    if any(not 0 <= s < n for s in S):
        raise InputError("index set out of range")
    rest = tuple(i for i in range(n) if i not in set(S))
    if not S:
        return B, rest
    Z = solve(B.submatrix(S, S), B.submatrix(S, rest))
    return B.submatrix(rest, rest) - B.submatrix(rest, S) @ Z, rest


def support(v: Sequence[Fraction]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x != 0)
