"""Nullity-preserving reductions on Q0(D) and the recursive dichotomy engine.

Each reduction works at a vertex ``u`` of out-degree at most one and
removes it.  Vertex indices of the reduced instance are those of D with
``u`` deleted; when ``u`` is merged into its out-neighbour ``v``, the merged
vertex keeps ``v``'s slot.  In the semicontract case the row of the merged
vertex is row ``v`` of A and its column is column ``u``.

Reductions on the in-degree side are the same operations applied to the
reversed digraph and the transposed matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..digraph import Digraph, delete_vertex, reverse
from ..errors import InputError, InternalConsistencyError, LiftError, ReduceError
from ..minors import butterfly_contract, forbidden_scan, low_degree_pairs, star_contract
from .linalg import RationalMatrix, nullity, schur_complement
from .properties import SPWitness, in_Q0, sp_check, validate_sp_witness

ZERO = Fraction(0)


def _out_arc(D: Digraph, u: int) -> Optional[int]:
    outs = D.out_neighbors[u]
    if len(outs) > 1:
        raise ReduceError(f"vertex {u} has out-degree {len(outs)} > 1")
    return next(iter(outs)) if outs else None


def _require_q0(D: Digraph, A: RationalMatrix) -> None:
    if not in_Q0(D, A):
        raise ReduceError("matrix is not in Q0 of the digraph")


def reduce_contract(D: Digraph, A: RationalMatrix, u: int) -> tuple[Digraph, RationalMatrix]:
    """(D/uv, A/A[u]) for a_uu != 0 and a_uv != 0."""
    _require_q0(D, A)
    v = _out_arc(D, u)
    if v is None or A[u, u] == 0 or A[u, v] == 0:
        raise ReduceError("contract needs an out-arc (u, v) with a_uu and a_uv nonzero")
    D2, _ = butterfly_contract(D, u, v)
    A2, _ = schur_complement(A, [u])
    return D2, A2


def reduce_delete(D: Digraph, A: RationalMatrix, u: int) -> tuple[Digraph, RationalMatrix]:
    """(D - u, A(u, u)) for a_uu != 0 and a_uv == 0.

    Also accepts out-degree zero, where row u vanishes off the diagonal.
    """
    _require_q0(D, A)
    v = _out_arc(D, u)
    if A[u, u] == 0 or (v is not None and A[u, v] != 0):
        raise ReduceError("delete needs a_uu nonzero and a_uv zero")
    rest = [i for i in range(D.n) if i != u]
    return delete_vertex(D, u)[0], A.submatrix(rest, rest)


def _semicontract_columns(n: int, u: int, v: int) -> list[int]:
    # columns of A(u, v) laid out on the slots of V - u; v's slot holds column u
    return [u if i == v else i for i in range(n) if i != u]


def reduce_semicontract(D: Digraph, A: RationalMatrix, u: int) -> tuple[Digraph, RationalMatrix]:
    """(D*uv, A(u, v)) for a_uu == 0 and a_uv != 0."""
    _require_q0(D, A)
    v = _out_arc(D, u)
    if v is None or A[u, u] != 0 or A[u, v] == 0:
        raise ReduceError("semicontract needs an out-arc (u, v) with a_uu zero and a_uv nonzero")
    rows = [i for i in range(D.n) if i != u]
    return star_contract(D, u, v)[0], A.submatrix(rows, _semicontract_columns(D.n, u, v))


REDUCTIONS = {
    "contract": reduce_contract,
    "delete": reduce_delete,
    "semicontract": reduce_semicontract,
}


def applicable_reduction(D: Digraph, A: RationalMatrix, u: int) -> Optional[str]:
    if len(D.out_neighbors[u]) > 1:
        return None
    v = _out_arc(D, u)
    diag = A[u, u] != 0
    arc = v is not None and A[u, v] != 0
    if diag and arc:
        return "contract"
    if diag:
        return "delete"
    if arc:
        return "semicontract"
    return None


def lift_sp_witness(kind: str, D: Digraph, A: RationalMatrix, u: int,
                    reduced: SPWitness) -> SPWitness:
    """Turn a witness for the reduced instance into one for (D, A).

    The new coordinate of the left vector is chosen so that column u (or
    column v, for semicontract) of xᵀA vanishes.  For delete and
    semicontract that coordinate can land on a vertex whose arcs touch the
    support of y, and then no witness exists on these supports: LiftError.
    """
    n = D.n
    v = _out_arc(D, u)
    x2, y2 = reduced.x, reduced.y
    if len(x2) != n - 1 or len(y2) != n - 1:
        raise InputError("reduced witness has the wrong length")
    slot = {i: (i if i < u else i - 1) for i in range(n) if i != u}
    x = [ZERO] * n
    y = [ZERO] * n
    for i, s in slot.items():
        x[i] = x2[s]
    pivot_col = v if kind == "semicontract" else u
    pivot = A[u, pivot_col]
    x[u] = -sum((x[i] * A[i, pivot_col] for i in slot), ZERO) / pivot
    if kind == "contract":
        for i, s in slot.items():
            y[i] = y2[s]
        y[u] = -A[u, v] * y2[slot[v]] / A[u, u]
    elif kind == "delete":
        for i, s in slot.items():
            y[i] = y2[s]
    elif kind == "semicontract":
        for i, s in slot.items():
            if i != v:
                y[i] = y2[s]
        y[u] = y2[slot[v]]
    else:
        raise InputError(f"unknown reduction {kind!r}")
    lifted = SPWitness(tuple(x), tuple(y))
    if not validate_sp_witness(D, A, lifted):
        raise LiftError(f"lifted {kind} witness does not validate")
    return lifted


# -- the engine ---------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    kind: str
    vertex: int
    transposed: bool
    digraph: Digraph  # instance before the step, in its original orientation
    matrix: RationalMatrix


@dataclass(frozen=True)
class MatrixVerdict:
    """Outcome of :func:`check_matrix`.

    ``kind`` is ``"nullity<=1"`` or ``"sp-violation"``; ``terminal`` names
    how the last instance was settled: ``"nullity"``, ``"low-degree-zero-lines"``
    (zero row at an out-degree <= 1 vertex, zero column at a non-adjacent
    in-degree <= 1 vertex), ``"zero-lines"`` (the same shape without the
    degree bounds) or ``"support-search"`` (exhaustive support enumeration).
    ``"backtrack-search"`` means the reduced instance kept the support
    property and the trace was cut back to the last instance violating it.
    ``resettled`` counts trace steps whose lift failed and were settled
    afresh by support enumeration.
    """

    kind: str
    witness: Optional[SPWitness]
    trace: tuple[ReductionStep, ...]
    terminal: str
    resettled: int = 0

    @property
    def sp_violation(self) -> bool:
        return self.kind == "sp-violation"


def _apply(step_kind: str, D: Digraph, A: RationalMatrix, u: int, transposed: bool):
    if transposed:
        D2, A2 = REDUCTIONS[step_kind](reverse(D), A.T, u)
        return reverse(D2), A2.T
    return REDUCTIONS[step_kind](D, A, u)


def _lift(step: ReductionStep, w: SPWitness) -> SPWitness:
    if step.transposed:
        # (x, y) for (D, A) is (y, x) for (reverse D, Aᵀ)
        flipped = lift_sp_witness(step.kind, reverse(step.digraph), step.matrix.T, step.vertex,
                                  SPWitness(w.y, w.x))
        return SPWitness(flipped.y, flipped.x)
    return lift_sp_witness(step.kind, step.digraph, step.matrix, step.vertex, w)


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(n))


def _zero_lines_witness(D: Digraph, A: RationalMatrix, bounded: bool) -> Optional[SPWitness]:
    n = D.n
    zero_rows = [u for u in range(n) if all(A[u, j] == 0 for j in range(n))]
    zero_cols = [v for v in range(n) if all(A[i, v] == 0 for i in range(n))]
    if bounded:
        pairs = [p for p in low_degree_pairs(D) if p[0] in zero_rows and p[1] in zero_cols]
    else:
        pairs = [(u, v) for u in zero_rows for v in zero_cols if u != v and not D.has_arc(u, v)]
    if not pairs:
        return None
    u, v = pairs[0]
    return SPWitness(_unit(n, u), _unit(n, v))


def _next_reduction(D: Digraph, A: RationalMatrix) -> Optional[tuple[str, int, bool]]:
    """Pick a reduction, preferring the vertices of a low-degree pair."""
    for u, v in low_degree_pairs(D):
        kind = applicable_reduction(D, A, u)
        if kind is not None:
            return kind, u, False
        kind = applicable_reduction(reverse(D), A.T, v)
        if kind is not None:
            return kind, v, True
    for u in range(D.n):
        if len(D.out_neighbors[u]) <= 1:
            kind = applicable_reduction(D, A, u)
            if kind is not None:
                return kind, u, False
    R, AT = reverse(D), A.T
    for v in range(D.n):
        if len(R.out_neighbors[v]) <= 1:
            kind = applicable_reduction(R, AT, v)
            if kind is not None:
                return kind, v, True
    return None


def check_matrix(D: Digraph, A: RationalMatrix, require_clean: bool = True,
                 allow_search: bool = True) -> MatrixVerdict:
    """Either certify nullity <= 1 or produce a verified support-property violation.

    At each stage, if a vertex u of out-degree <= 1 and
    a vertex v of in-degree <= 1 (distinct, non-adjacent) have zero row and
    zero column, the unit vectors at u and v violate the support property;
    otherwise a reduction at u (or, transposed, at v) removes a vertex and
    the process repeats.  Violations are lifted back through every step and
    re-validated against (D, A).

    With ``allow_search`` an instance that admits neither move is settled by
    exhaustive support enumeration, backing up the trace while the support
    property holds.  If it holds on the input itself with nullity above one,
    the dichotomy fails and :class:`InternalConsistencyError` is raised.
    """
    if not in_Q0(D, A):
        raise InputError("matrix is not in Q0 of the digraph")
    if require_clean and not forbidden_scan(D, stop_early=True).clean:
        raise InputError("digraph has a forbidden directed minor")

    trace: list[ReductionStep] = []
    witness: Optional[SPWitness] = None
    terminal = ""
    cur_D, cur_A = D, A
    while True:
        if nullity(cur_A) <= 1:
            return MatrixVerdict("nullity<=1", None, tuple(trace), "nullity")
        witness = _zero_lines_witness(cur_D, cur_A, bounded=True)
        if witness is not None:
            terminal = "low-degree-zero-lines"
            break
        choice = _next_reduction(cur_D, cur_A)
        if choice is not None:
            kind, u, transposed = choice
            trace.append(ReductionStep(kind, u, transposed, cur_D, cur_A))
            cur_D, cur_A = _apply(kind, cur_D, cur_A, u, transposed)
            if not in_Q0(cur_D, cur_A):
                raise InternalConsistencyError(f"{kind} left Q0 of the reduced digraph")
            continue
        witness = _zero_lines_witness(cur_D, cur_A, bounded=False)
        if witness is not None:
            terminal = "zero-lines"
            break
        if not allow_search:
            raise InternalConsistencyError("no reduction or zero-line witness applies to the reduced instance")
        result = sp_check(cur_A, cur_D)
        terminal = "support-search"
        if not result.holds:
            witness = result.witness
            break
        # the reductions can create the support property; back up the trace
        while trace:
            step = trace.pop()
            cur_D, cur_A = step.digraph, step.matrix
            result = sp_check(cur_A, cur_D)
            if not result.holds:
                break
        if result.holds:
            raise InternalConsistencyError(
                f"support property holds with nullity {nullity(A)} on the input {D}")
        witness = result.witness
        terminal = "backtrack-search"
        break

    if not validate_sp_witness(cur_D, cur_A, witness):
        raise InternalConsistencyError("terminal witness does not validate")
    resettled = 0
    k = len(trace)
    while k:
        k -= 1
        step = trace[k]
        try:
            witness = _lift(step, witness)
            continue
        except LiftError:
            if not allow_search:
                raise
        # settle this instance afresh, backing up while the support property holds
        while True:
            result = sp_check(step.matrix, step.digraph)
            if not result.holds:
                break
            if k == 0:
                raise InternalConsistencyError(
                    f"support property holds with nullity {nullity(A)} on the input {D} "
                    "although a reduced instance violates it")
            k -= 1
            step = trace[k]
        witness = result.witness
        resettled += 1
    if not validate_sp_witness(D, A, witness):
        raise InternalConsistencyError("lifted witness does not validate on the input")
    return MatrixVerdict("sp-violation", witness, tuple(trace), terminal, resettled)
