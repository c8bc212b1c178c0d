"""Random constructions of pattern matrices with prescribed null vectors.

Sampling follows one distribution everywhere: a "free" integer entry is 0
with probability 1/2 and otherwise uniform on {±1, ±2, ±3}; a "nonzero"
entry is uniform on {±1, ±2, ±3}.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from ..digraph import Digraph
from .linalg import RationalMatrix, Vector, nullity, right_nullspace
from .properties import asap_check, in_Q

_NONZERO = (-3, -2, -1, 1, 2, 3)


def nonzero_int(rng: random.Random) -> int:
    return rng.choice(_NONZERO)


def free_int(rng: random.Random) -> int:
    return 0 if rng.random() < 0.5 else rng.choice(_NONZERO)


def random_vector(n: int, rng: random.Random) -> Vector:
    while True:
        v = tuple(Fraction(free_int(rng)) for _ in range(n))
        if any(v):
            return v


def _row_support(D: Digraph, i: int) -> list[int]:
    return sorted({i} | D.out_neighbors[i])


def matrix_with_kernel(D: Digraph, kernel: Sequence[Vector], rng: random.Random,
                       forced: bool) -> Optional[RationalMatrix]:
    """A random matrix on the pattern of D annihilating every vector in ``kernel``.

    Row i lives on {i} ∪ out(i) and is a random integer combination of a
    basis of the admissible rows.  With ``forced`` the result must lie in
    Q(D); None is returned when a diagonal or arc entry is necessarily or
    accidentally zero.
    """
    n = D.n
    rows: list = [None] * n
    # short rows first: they are the ones most likely to force a rejection
    for i in sorted(range(n), key=lambda r: (len(D.out_neighbors[r]), r)):
        cols = _row_support(D, i)
        constraints = RationalMatrix([[y[c] for c in cols] for y in kernel], len(cols))
        basis = right_nullspace(constraints) if kernel else [
            tuple(Fraction(int(a == b)) for b in range(len(cols))) for a in range(len(cols))]
        if forced and any(all(b[k] == 0 for b in basis) for k in range(len(cols))):
            return None
        local = [Fraction(0)] * len(cols)
        for b in basis:
            c = nonzero_int(rng) if forced else free_int(rng)
            local = [s + c * x for s, x in zip(local, b)]
        if forced and any(x == 0 for x in local):
            return None
        row = [Fraction(0)] * n
        for c, x in zip(cols, local):
            row[c] = x
        rows[i] = row
    return RationalMatrix(rows, n)


def random_q0_matrix(D: Digraph, rng: random.Random, min_nullity: int = 0) -> RationalMatrix:
    """A random member of Q0(D) with at least ``min_nullity`` independent null vectors."""
    kernel = [random_vector(D.n, rng) for _ in range(min_nullity)]
    A = matrix_with_kernel(D, kernel, rng, forced=False)
    assert A is not None
    return A


def random_q_matrix(D: Digraph, rng: random.Random) -> RationalMatrix:
    """A uniformly sampled member of Q(D) (generically nonsingular)."""
    rows = [[0] * D.n for _ in range(D.n)]
    for i in range(D.n):
        for c in _row_support(D, i):
            rows[i][c] = nonzero_int(rng)
    return RationalMatrix(rows, D.n)


def nu_lower_bound_search(D: Digraph, target: int, trials: int,
                          seed: int | str = 0) -> Optional[RationalMatrix]:
    """Look for A in Q(D) with the ASAP and nullity >= target.

    Trial t draws ``target`` random null vectors from its own generator
    seeded by ``(seed, t)`` and builds a matching pattern matrix.  The
    first trial that yields a verified certificate wins.  None proves
    nothing.
    """
    if target <= 0:
        for t in range(trials):
            A = random_q_matrix(D, random.Random(f"{seed}:{t}"))
            if asap_check(A).holds:
                return A
        return None
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        kernel = [random_vector(D.n, rng) for _ in range(target)]
        A = matrix_with_kernel(D, kernel, rng, forced=True)
        if A is None or nullity(A) < target:
            continue
        if in_Q(D, A) and asap_check(A).holds:
            return A
    return None
