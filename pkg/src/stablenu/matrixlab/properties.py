"""Sign-pattern classes Q(D), Q0(D) and the ASAP / SP checks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional

from ..digraph import Digraph, touches
from ..errors import CapacityError, InputError
from .linalg import RationalMatrix, Vector, left_nullspace, nullity, rank, right_nullspace, support

SP_LIMIT = 14


class Entry(Enum):
    FORCED_NONZERO = "nonzero"
    FORCED_ZERO = "zero"
    FREE = "free"


def pattern(D: Digraph, relaxed: bool = False) -> list[list[Entry]]:
    """Entry flags of Q(D), or of Q0(D) when ``relaxed``."""
    on = Entry.FREE if relaxed else Entry.FORCED_NONZERO
    flags = [[Entry.FORCED_ZERO] * D.n for _ in range(D.n)]
    for v in range(D.n):
        flags[v][v] = on
    for u, w in D.arcs:
        flags[u][w] = on
    return flags


def _conforms(D: Digraph, B: RationalMatrix, relaxed: bool) -> bool:
    if B.shape != (D.n, D.n):
        raise InputError(f"matrix shape {B.shape} does not match {D.n} vertices")
    for i, row in enumerate(pattern(D, relaxed)):
        for j, flag in enumerate(row):
            x = B[i, j]
            if flag is Entry.FORCED_ZERO and x != 0:
                return False
            if flag is Entry.FORCED_NONZERO and x == 0:
                return False
    return True


def in_Q(D: Digraph, B: RationalMatrix) -> bool:
    return _conforms(D, B, relaxed=False)


def in_Q0(D: Digraph, B: RationalMatrix) -> bool:
    return _conforms(D, B, relaxed=True)


@dataclass(frozen=True)
class ASAPResult:
    holds: bool
    dimension: int
    basis: tuple[RationalMatrix, ...] = ()


def asap_check(B: RationalMatrix) -> ASAPResult:
    """Decide whether X∘B = 0, XᵀB = 0 and BXᵀ = 0 force X = 0.

    XᵀB = 0 puts every column of X in the left null space and BXᵀ = 0 puts
    every row in the right null space, so X = sum c_ab x_a y_bᵀ over null
    space bases.  The Hadamard condition is then a linear system in the
    k² coefficients c_ab, one equation per nonzero entry of B.
    """
    n = B.n
    lefts = left_nullspace(B)
    rights = right_nullspace(B)
    k = len(lefts)
    if k == 0:
        return ASAPResult(True, 0)
    pairs = [(a, b) for a in range(k) for b in range(k)]
    eqs = [[lefts[a][i] * rights[b][j] for a, b in pairs]
           for i in range(n) for j in range(n) if B[i, j] != 0]
    coeffs = right_nullspace(RationalMatrix(eqs, len(pairs))) if eqs else [
        tuple(Fraction(int(p == q)) for q in range(len(pairs))) for p in range(len(pairs))]
    if not coeffs:
        return ASAPResult(True, 0)
    basis = []
    for c in coeffs:
        X = [[sum((c[p] * lefts[a][i] * rights[b][j] for p, (a, b) in enumerate(pairs)), Fraction(0))
              for j in range(n)] for i in range(n)]
        basis.append(RationalMatrix(X, n))
    return ASAPResult(False, len(coeffs), tuple(basis))


def in_violation_space(B: RationalMatrix, X: RationalMatrix) -> bool:
    """X∘B = 0, XᵀB = 0 and BXᵀ = 0."""
    n = B.n
    if any(X[i, j] != 0 and B[i, j] != 0 for i in range(n) for j in range(n)):
        return False
    return (X.T @ B).is_zero() and (B @ X.T).is_zero()


@dataclass(frozen=True)
class SPWitness:
    x: Vector  # left null vector
    y: Vector  # right null vector

    def to_json(self) -> dict:
        return {"x": [str(v) for v in self.x], "y": [str(v) for v in self.y]}


@dataclass(frozen=True)
class SPResult:
    holds: bool
    witness: Optional[SPWitness] = None


def validate_sp_witness(D: Digraph, B: RationalMatrix, w: SPWitness) -> bool:
    """Nonzero null vectors on both sides whose supports do not touch in D."""
    n = B.n
    if len(w.x) != n or len(w.y) != n:
        return False
    sx, sy = support(w.x), support(w.y)
    if not sx or not sy:
        return False
    if any(v != 0 for v in B.left_apply(w.x)) or any(v != 0 for v in B.apply(w.y)):
        return False
    return not touches(D, sx, sy)


def _circuits(B: RationalMatrix) -> list[tuple[frozenset[int], Vector]]:
    """Minimal linearly dependent sets of columns with their dependencies."""
    n = B.ncols
    found: list[tuple[frozenset[int], Vector]] = []
    masks: list[int] = []
    r = rank(B)
    for size in range(1, r + 2):
        for cols in combinations(range(n), size):
            mask = sum(1 << c for c in cols)
            if any(m & mask == m for m in masks):
                continue
            sub = B.submatrix(range(B.nrows), cols)
            kernel = right_nullspace(sub)
            if not kernel:
                continue
            full = [Fraction(0)] * n
            for c, value in zip(cols, kernel[0]):
                full[c] = value
            found.append((frozenset(cols), tuple(full)))
            masks.append(mask)
    return found


def sp_check(B: RationalMatrix, D: Digraph) -> SPResult:
    """Decide the support property of B with respect to D.

    A violating pair can always be shrunk to a minimal dependent set of rows
    and a minimal dependent set of columns, so only those are enumerated.
    """
    n = B.n
    if n != D.n:
        raise InputError("matrix and digraph sizes differ")
    if n > SP_LIMIT:
        raise CapacityError(f"support enumeration limited to {SP_LIMIT} vertices, got {n}")
    if nullity(B) == 0:
        return SPResult(True)
    row_sets = _circuits(B.T)
    col_sets = _circuits(B)
    for R, x in row_sets:
        for S, y in col_sets:
            if not touches(D, R, S):
                return SPResult(False, SPWitness(x, y))
    return SPResult(True)
