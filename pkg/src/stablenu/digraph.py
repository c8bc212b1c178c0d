"""Simple digraphs on dense 0-based vertex sets.

A :class:`Digraph` is an immutable value: ``n`` vertices ``0..n-1`` and a
sorted tuple of arcs ``(u, w)`` with ``u != w``.  Two digraphs are equal iff
they have the same vertex count and arc set.  Edits return a new digraph
together with a relabeling map ``mapping[old] -> new`` (``None`` for a
vertex that disappeared), so that certificates can be replayed and lifted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, InputError

Arc = tuple[int, int]
Mapping = tuple[Optional[int], ...]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"negative vertex count {self.n}")
        prev = None
        for arc in self.arcs:
            u, w = arc
            if not (0 <= u < self.n and 0 <= w < self.n):
                raise InputError(f"arc {arc} out of range for n={self.n}")
            if u == w:
                raise InputError(f"self-arc at vertex {u}")
            if prev is not None and arc <= prev:
                raise InputError("arcs must be sorted and free of duplicates")
            prev = arc

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "Digraph":
        """Build from arcs in any order; duplicates and self-arcs are rejected."""
        arc_list = [(int(u), int(w)) for u, w in arcs]
        if len(set(arc_list)) != len(arc_list):
            raise InputError("duplicate arc")
        return cls(n, tuple(sorted(arc_list)))

    @classmethod
    def _unchecked(cls, n: int, arcs: Iterable[Arc]) -> "Digraph":
        # arcs come from a set built by library code; loops already filtered
        return cls(n, tuple(sorted(set(arcs))))

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    @cached_property
    def out_neighbors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        for u, w in self.arcs:
            out[u].add(w)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def in_neighbors(self) -> tuple[frozenset[int], ...]:
        inn: list[set[int]] = [set() for _ in range(self.n)]
        for u, w in self.arcs:
            inn[w].add(u)
        return tuple(frozenset(s) for s in inn)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, w in self.arcs:
            masks[u] |= 1 << w
        return tuple(masks)

    def has_arc(self, u: int, w: int) -> bool:
        return (u, w) in self.arc_set

    def vertices(self) -> range:
        return range(self.n)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"


# -- constructors -----------------------------------------------------------

def path(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Digraph:
    if n < 2:
        raise InputError("a directed cycle needs at least 2 vertices")
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Digraph:
    """The complete digraph K_n: both arcs between every pair."""
    return Digraph.from_arcs(n, [(u, w) for u in range(n) for w in range(n) if u != w])


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every labeled digraph on ``n`` vertices, ``2**(n*(n-1))`` of them."""
    pairs = [(u, w) for u in range(n) for w in range(n) if u != w]
    for bits in range(1 << len(pairs)):
        yield Digraph(n, tuple(p for k, p in enumerate(pairs) if bits >> k & 1))


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    pairs = [(u, w) for u in range(n) for w in range(n) if u != w]
    return Digraph(n, tuple(a for a in pairs if rng.random() < p))


# -- basic queries ----------------------------------------------------------

def reverse(D: Digraph) -> Digraph:
    return Digraph._unchecked(D.n, ((w, u) for u, w in D.arcs))


def topological_order(D: Digraph) -> Optional[tuple[int, ...]]:
    """A vertex order with every arc pointing forward, or None if D has a cycle."""
    indeg = [len(s) for s in D.in_neighbors]
    ready = [v for v in range(D.n) if indeg[v] == 0]
    order = []
    while ready:
        ready.sort(reverse=True)
        v = ready.pop()
        order.append(v)
        for w in D.out_neighbors[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return tuple(order) if len(order) == D.n else None


def is_acyclic(D: Digraph) -> bool:
    return topological_order(D) is not None


def _check_vertex(D: Digraph, v: int) -> None:
    if not 0 <= v < D.n:
        raise InputError(f"vertex {v} out of range for n={D.n}")


def degrees(D: Digraph, v: int) -> tuple[int, int]:
    """(outdegree, indegree) of ``v``."""
    _check_vertex(D, v)
    return len(D.out_neighbors[v]), len(D.in_neighbors[v])


def touches(D: Digraph, R: Iterable[int], S: Iterable[int]) -> bool:
    """Whether R and S (in this order) intersect or some arc runs from R into S."""
    R, S = set(R), set(S)
    if R & S:
        return True
    return any(D.out_neighbors[r] & S for r in R)


# -- edits ------------------------------------------------------------------

def delete_vertex(D: Digraph, v: int) -> tuple[Digraph, Mapping]:
    _check_vertex(D, v)
    mapping = tuple(None if x == v else (x if x < v else x - 1) for x in range(D.n))
    arcs = ((mapping[a], mapping[b]) for a, b in D.arcs if v not in (a, b))
    return Digraph._unchecked(D.n - 1, arcs), mapping


def delete_arc(D: Digraph, u: int, w: int) -> Digraph:
    if not D.has_arc(u, w):
        raise InputError(f"arc ({u}, {w}) not present")
    return Digraph(D.n, tuple(a for a in D.arcs if a != (u, w)))


def delete_arcs(D: Digraph, arcs: Iterable[Arc]) -> Digraph:
    drop = set(arcs)
    if not drop <= D.arc_set:
        raise InputError(f"arcs {sorted(drop - D.arc_set)} not present")
    return Digraph(D.n, tuple(a for a in D.arcs if a not in drop))


def identify(D: Digraph, u: int, w: int) -> tuple[Digraph, Mapping]:
    """Merge ``u`` into ``w``: u disappears, w inherits its arcs.

    Self-arcs produced by the merge are dropped and parallel arcs merged.
    """
    _check_vertex(D, u)
    _check_vertex(D, w)
    if u == w:
        raise InputError("cannot identify a vertex with itself")
    shift = [x if x < u else x - 1 for x in range(D.n)]
    mapping = tuple(shift[w] if x == u else shift[x] for x in range(D.n))
    arcs = set()
    for a, b in D.arcs:
        a2, b2 = mapping[a], mapping[b]
        if a2 != b2:
            arcs.add((a2, b2))
    return Digraph._unchecked(D.n - 1, arcs), mapping


def relabel(D: Digraph, perm: Sequence[int]) -> Digraph:
    """Image of D under the bijection ``v -> perm[v]``."""
    if sorted(perm) != list(range(D.n)):
        raise InputError("relabeling must be a permutation")
    return Digraph._unchecked(D.n, ((perm[u], perm[w]) for u, w in D.arcs))


def compose(first: Mapping, second: Mapping) -> Mapping:
    return tuple(None if x is None else second[x] for x in first)


# -- isomorphism and embeddings ---------------------------------------------

def find_embedding(H: Digraph, D: Digraph) -> Optional[tuple[int, ...]]:
    """An injection phi with (phi(a), phi(b)) an arc of D for every arc (a, b) of H.

    Backtracking with degree pruning; intended for small H and D.
    """
    if H.n > D.n or H.m > D.m:
        return None
    hout = [len(s) for s in H.out_neighbors]
    hin = [len(s) for s in H.in_neighbors]
    dout = [len(s) for s in D.out_neighbors]
    din = [len(s) for s in D.in_neighbors]
    order = sorted(range(H.n), key=lambda a: -(hout[a] + hin[a]))
    phi = [-1] * H.n
    used = [False] * D.n

    def extend(k: int) -> bool:
        if k == H.n:
            return True
        a = order[k]
        for x in range(D.n):
            if used[x] or dout[x] < hout[a] or din[x] < hin[a]:
                continue
            ok = True
            for b in order[:k]:
                y = phi[b]
                if H.has_arc(a, b) and not D.has_arc(x, y):
                    ok = False
                    break
                if H.has_arc(b, a) and not D.has_arc(y, x):
                    ok = False
                    break
            if not ok:
                continue
            phi[a] = x
            used[x] = True
            if extend(k + 1):
                return True
            used[x] = False
            phi[a] = -1
        return False

    return tuple(phi) if extend(0) else None


def is_subdigraph(H: Digraph, D: Digraph, injection: Optional[Sequence[int]] = None,
                  limit: int = 8) -> bool:
    """Whether H is (isomorphic to) a subdigraph of D.

    With an explicit ``injection`` the containment is checked directly;
    otherwise a search is run, which requires ``D.n <= limit``.
    """
    if injection is not None:
        if len(injection) != H.n or len(set(injection)) != H.n:
            raise InputError("injection must be injective on V(H)")
        if any(not 0 <= x < D.n for x in injection):
            raise InputError("injection leaves V(D)")
        return all(D.has_arc(injection[a], injection[b]) for a, b in H.arcs)
    if D.n > limit:
        raise CapacityError(f"subdigraph search limited to {limit} vertices, got {D.n}")
    return find_embedding(H, D) is not None


def find_isomorphism(D1: Digraph, D2: Digraph) -> Optional[tuple[int, ...]]:
    """A bijection mapping D1 onto D2, found by degree-pruned enumeration."""
    if D1.n != D2.n or D1.m != D2.m:
        return None
    sig1 = sorted((len(D1.out_neighbors[v]), len(D1.in_neighbors[v])) for v in range(D1.n))
    sig2 = sorted((len(D2.out_neighbors[v]), len(D2.in_neighbors[v])) for v in range(D2.n))
    if sig1 != sig2:
        return None
    # equal arc counts make an arc-preserving bijection an isomorphism
    return find_embedding(D1, D2)


def is_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    return find_isomorphism(D1, D2) is not None


def _refine(D: Digraph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition, isomorphism-invariant."""
    while True:
        cell_of = {}
        for idx, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = idx
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {}
            for v in cell:
                outs = [0] * len(cells)
                ins = [0] * len(cells)
                for w in D.out_neighbors[v]:
                    outs[cell_of[w]] += 1
                for w in D.in_neighbors[v]:
                    ins[cell_of[w]] += 1
                sig[v] = (tuple(outs), tuple(ins))
            for key in sorted(set(sig.values())):
                new_cells.append(sorted(v for v in cell if sig[v] == key))
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _twins(D: Digraph, u: int, w: int) -> bool:
    # swapping u and w is an automorphism
    ou, ow = D.out_neighbors[u] - {w}, D.out_neighbors[w] - {u}
    iu, iw = D.in_neighbors[u] - {w}, D.in_neighbors[w] - {u}
    return ou == ow and iu == iw and D.has_arc(u, w) == D.has_arc(w, u)


def canonical_labeling(D: Digraph) -> tuple[tuple[int, ...], int]:
    """A permutation ``perm`` and the code of ``relabel(D, perm)``.

    The code is the smallest adjacency bit-string over all leaves of an
    individualization-refinement search; isomorphic digraphs share it.
    """
    n = D.n
    best: list = [None, None]

    def code_of(order: list[int]) -> int:
        pos = {v: i for i, v in enumerate(order)}
        code = 0
        for u, w in D.arcs:
            code |= 1 << (pos[u] * n + pos[w])
        return code

    def search(cells: list[list[int]]) -> None:
        cells = _refine(D, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = code_of(order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any(_twins(D, v, t) for t in tried):
                continue
            tried.append(v)
            rest = [x for x in cell if x != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if n == 0:
        return (), 0
    search([list(range(n))])
    order = best[1]
    perm = [0] * n
    for i, v in enumerate(order):
        perm[v] = i
    return tuple(perm), best[0]


def canonical_form(D: Digraph) -> tuple[int, int]:
    """Isomorphism-invariant key ``(n, code)``."""
    return D.n, canonical_labeling(D)[1]


def canonical_digraph(D: Digraph) -> Digraph:
    perm, _ = canonical_labeling(D)
    return relabel(D, perm)

