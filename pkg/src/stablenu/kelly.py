"""Directed elimination orderings, Kelly-width, k-DAGs and Kelly-decompositions.

Kelly-width is computed as one plus the smallest width of a directed
elimination ordering.  After a set S of vertices has been eliminated (in
any order), the residual digraph has an arc (a, b) exactly when D has a
directed path from a to b whose interior lies in S.  That makes the
residual graph a function of S alone, which is what the subset dynamic
program below relies on.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .digraph import Digraph, complete, delete_vertex, is_acyclic
from .errors import CapacityError, InputError

DP_LIMIT = int(os.environ.get("STABLENU_KELLY_CAP", "20"))


def eliminate(D: Digraph, v: int) -> Digraph:
    """Delete v, adding a shortcut u -> w for every path u -> v -> w with u != w."""
    if not 0 <= v < D.n:
        raise InputError(f"vertex {v} out of range for n={D.n}")
    arcs = set(D.arcs)
    for u in D.in_neighbors[v]:
        for w in D.out_neighbors[v]:
            if u != w:
                arcs.add((u, w))
    shortcut = Digraph._unchecked(D.n, arcs)
    return delete_vertex(shortcut, v)[0]


def _check_ordering(D: Digraph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(D.n)):
        raise InputError("elimination ordering must be a permutation of the vertices")


def ordering_width(D: Digraph, order: Sequence[int]) -> int:
    """Largest out-degree met by a vertex at the moment it is eliminated."""
    _check_ordering(D, order)
    width = 0
    labels = list(range(D.n))  # current index -> original vertex
    for v in order:
        k = labels.index(v)
        width = max(width, len(D.out_neighbors[k]))
        D = eliminate(D, k)
        labels.pop(k)
    return width


def _residual_outdegree(out: Sequence[int], eliminated: int, v: int) -> int:
    reach = out[v]
    frontier = reach & eliminated
    done = 0
    while frontier:
        low = frontier & -frontier
        x = low.bit_length() - 1
        done |= low
        reach |= out[x]
        frontier = reach & eliminated & ~done
    return bin(reach & ~eliminated & ~(1 << v)).count("1")


@dataclass(frozen=True)
class WidthReport:
    width: int  # Kelly-width
    ordering: tuple[int, ...]
    method: str  # "exact" | "greedy"
    cap: Optional[int] = None

    @property
    def ordering_width(self) -> int:
        return self.width - 1

    @property
    def within_cap(self) -> Optional[bool]:
        return None if self.cap is None else self.width <= self.cap


def min_ordering_width(D: Digraph) -> tuple[int, tuple[int, ...]]:
    """Smallest elimination-ordering width and an ordering attaining it."""
    n = D.n
    if n > DP_LIMIT:
        raise CapacityError(f"subset dynamic program limited to {DP_LIMIT} vertices, got {n}")
    out = D.out_masks
    full = (1 << n) - 1
    memo: dict[int, tuple[int, int]] = {full: (0, -1)}

    def best(S: int) -> int:
        hit = memo.get(S)
        if hit is not None:
            return hit[0]
        degs = [(v, _residual_outdegree(out, S, v)) for v in range(n) if not S >> v & 1]
        sink = next((v for v, d in degs if d == 0), None)
        if sink is not None:
            # eliminating a sink early never hurts
            result = (best(S | 1 << sink), sink)
        else:
            result = None
            for v, d in sorted(degs, key=lambda p: p[1]):
                if result is not None and d >= result[0]:
                    break
                cand = max(d, best(S | 1 << v))
                if result is None or cand < result[0]:
                    result = (cand, v)
        memo[S] = result
        return result[0]

    width = best(0)
    order = []
    S = 0
    while S != full:
        v = memo[S][1]
        order.append(v)
        S |= 1 << v
    return width, tuple(order)


def kelly_width_exact(D: Digraph, cap: Optional[int] = None) -> WidthReport:
    width, order = min_ordering_width(D)
    return WidthReport(width + 1, order, "exact", cap)


def recognize_width1(D: Digraph) -> Optional[tuple[int, ...]]:
    """Greedy: repeatedly eliminate a vertex of current out-degree <= 1.

    Sinks go before out-degree-one vertices, ties go to the lowest index.
    A returned ordering always has width <= 1; None is not conclusive.
    """
    out = D.out_masks
    S = 0
    order = []
    full = (1 << D.n) - 1
    while S != full:
        best = None
        for x in range(D.n):
            if not S >> x & 1:
                d = _residual_outdegree(out, S, x)
                if d <= 1 and (best is None or d < best[0]):
                    best = (d, x)
                    if d == 0:
                        break
        if best is None:
            return None
        v = best[1]
        order.append(v)
        S |= 1 << v
    return tuple(order)


def kelly_width_at_most_two(D: Digraph) -> tuple[bool, Optional[tuple[int, ...]], str]:
    """Decide Kelly-width <= 2; greedy first, exact program as the fallback."""
    order = recognize_width1(D)
    if order is not None:
        return True, order, "greedy"
    width, order = min_ordering_width(D)
    return width <= 1, order if width <= 1 else None, "exact"


def is_partial_kdag(D: Digraph, k: int) -> bool:
    return kelly_width_exact(D).width <= k + 1


def build_kdag(k: int, script: Iterable[Iterable[int]]) -> Digraph:
    """Grow a k-DAG from K_k; each script entry is the out-neighbourhood X of a new vertex.

    The new vertex v gets arcs to X, and an arc u -> v from every existing u
    that already has arcs to all of X minus u.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    D = complete(k)
    for X in script:
        X = frozenset(X)
        if len(X) > k:
            raise InputError(f"out-neighbourhood {sorted(X)} larger than k={k}")
        if any(not 0 <= x < D.n for x in X):
            raise InputError(f"out-neighbourhood {sorted(X)} refers to unknown vertices")
        v = D.n
        arcs = set(D.arcs)
        arcs.update((v, x) for x in X)
        for u in range(v):
            if (X - {u}) <= D.out_neighbors[u]:
                arcs.add((u, v))
        D = Digraph._unchecked(v + 1, arcs)
    return D


# -- Kelly-decompositions --------------------------------------------------------

def guards(D: Digraph, X: Iterable[int], W: Iterable[int]) -> bool:
    """Whether X guards W: disjoint, and every arc leaving W lands in X."""
    X, W = set(X), set(W)
    if X & W:
        return False
    return all(D.out_neighbors[u] <= W | X for u in W)


@dataclass(frozen=True)
class KellyDecomposition:
    """Nodes are 0..len(W)-1; ``dag_arcs`` are arcs of the DAG T."""

    dag_arcs: tuple[tuple[int, int], ...]
    W: tuple[frozenset[int], ...]
    X: tuple[frozenset[int], ...]
    child_order: dict[int, tuple[int, ...]] = field(default_factory=dict)
    root_order: tuple[int, ...] = ()

    @property
    def nodes(self) -> int:
        return len(self.W)


@dataclass(frozen=True)
class DecompositionCheck:
    valid: bool
    width: int
    violations: tuple[str, ...]


ROOT_RULES = ("guarded", "literal", "skip")


def validate_kelly_decomposition(D: Digraph, KD: KellyDecomposition,
                                 root_rule: str = "guarded") -> DecompositionCheck:
    """Check a Kelly-decomposition of D and report its width.

    ``W_below(i)`` is the union of W_j over all nodes j reachable from i in T
    (i included).  Root enumerations are checked by ``root_rule``:

    * ``"guarded"``: X of the q-th root lies in the union of W_below of the
      earlier roots (the guard-style reading, analogous to the child rule);
    * ``"literal"``: W of the q-th root lies in that union, which forces the
      first root to have an empty W;
    * ``"skip"``: no root condition.
    """
    if root_rule not in ROOT_RULES:
        raise InputError(f"unknown root rule {root_rule!r}")
    t = KD.nodes
    if len(KD.X) != t:
        raise InputError("W and X must be indexed by the same nodes")
    for a, b in KD.dag_arcs:
        if not (0 <= a < t and 0 <= b < t):
            raise InputError(f"tree arc {(a, b)} refers to unknown nodes")
    for part in (*KD.W, *KD.X):
        if any(not 0 <= v < D.n for v in part):
            raise InputError("decomposition mentions vertices outside D")

    violations = []
    T = Digraph.from_arcs(t, KD.dag_arcs)
    if not is_acyclic(T):
        violations.append("acyclic")

    seen: set[int] = set()
    for part in KD.W:
        if part & seen:
            violations.append("partition")
            break
        seen |= part
    else:
        if seen != set(range(D.n)):
            violations.append("partition")

    below = []
    for i in range(t):
        stack, reach = [i], {i}
        while stack:
            j = stack.pop()
            for c in T.out_neighbors[j]:
                if c not in reach:
                    reach.add(c)
                    stack.append(c)
        below.append(frozenset().union(*(KD.W[j] for j in reach)))

    for i in range(t):
        if not guards(D, KD.X[i], below[i]):
            violations.append(f"guard:{i}")

    for i in range(t):
        children = tuple(sorted(T.out_neighbors[i]))
        order = KD.child_order.get(i, children)
        if sorted(order) != list(children):
            violations.append(f"child-order:{i}")
            continue
        allowed = set(KD.W[i]) | set(KD.X[i])
        for c in order:
            if not KD.X[c] <= allowed:
                violations.append(f"child:{i}->{c}")
            allowed |= below[c]

    roots = tuple(i for i in range(t) if not T.in_neighbors[i])
    order = KD.root_order or roots
    if sorted(order) != list(roots):
        violations.append("root-order")
    elif root_rule != "skip":
        earlier: set[int] = set()
        for r in order:
            part = KD.X[r] if root_rule == "guarded" else KD.W[r]
            if not part <= earlier:
                violations.append(f"root:{r}")
            earlier |= below[r]

    width = max((len(KD.W[i] | KD.X[i]) for i in range(t)), default=0)
    return DecompositionCheck(not violations, width, tuple(violations))

